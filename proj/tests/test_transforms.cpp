#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "noisebench/dataset.hpp"
#include "noisebench/errors.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/transforms.hpp"
#include "test_oracles.hpp"

using namespace noisebench;

TEST_SUITE("transforms") {

TEST_CASE("normal inverse cdf") {
  CHECK(normal_inverse_cdf(0.5) == 0.0);
  CHECK(normal_inverse_cdf(0.975) == doctest::Approx(1.959964).epsilon(1e-5));
  for (double p : {1e-6, 0.3, 1.0 - 1e-6}) {
    CHECK(std::abs(normal_cdf(normal_inverse_cdf(p)) - p) < 1e-9);
  }
  CHECK_THROWS_AS((void)normal_inverse_cdf(0.0), Error);
  CHECK_THROWS_AS((void)normal_inverse_cdf(1.0), Error);
  CHECK_THROWS_AS((void)normal_inverse_cdf(-0.2), Error);
}

TEST_CASE("minmax scaler") {
  TimeSeriesDataset ds(2, 3);
  // feature ranges: (-2,2), (0,10), constant 5
  double vals[2][3] = {{-2.0, 0.0, 5.0}, {2.0, 10.0, 5.0}};
  for (std::size_t i = 0; i < 2; ++i) {
    std::copy(vals[i], vals[i] + 3, ds.series(i).begin());
  }
  const MinMaxScaler s = MinMaxScaler::fit(ds);
  CHECK(s.apply_one(0, 1.0) == doctest::Approx(0.5));
  CHECK(s.apply_one(2, 5.0) == 0.0);    // constant feature -> 0
  CHECK(s.invert_one(2, 0.77) == 5.0);  // invert restores the constant

  const TimeSeriesDataset fwd = s.apply(ds);
  const TimeSeriesDataset back = s.invert(fwd);
  for (std::size_t i = 0; i < ds.data.size(); ++i) {
    CHECK(back.data[i] == doctest::Approx(ds.data[i]).epsilon(1e-12));
  }
}

TEST_CASE("quantile map reproduces normal quantiles") {
  const int n = 1000000;
  RngStream s(71, 0);
  std::vector<double> x(n);
  for (double& v : x) v = s.std_normal();
  const QuantileMap map = QuantileMap::fit(x, 1024);
  double worst = 0.0;
  for (int j = 0; j < 1024; ++j) {
    const double p = (j + 0.5) / 1024.0;
    worst = std::max(worst, std::abs(map.quantiles()[j] - normal_inverse_cdf(p)));
  }
  CHECK(worst < 0.05);
}

TEST_CASE("quantile apply on training data is standard normal (KS)") {
  const int n = 1000000;
  RngStream s(72, 0);
  std::vector<double> x(n);
  for (double& v : x) v = s.exponential(2.0);  // deliberately non-normal input
  const QuantileMap map = QuantileMap::fit(x, 1024);
  std::vector<double> y(n);
  map.apply(x, y);
  std::sort(y.begin(), y.end());
  double ks = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = normal_cdf(y[i]);
    ks = std::max(ks, std::abs(cdf - double(i) / n));
    ks = std::max(ks, std::abs(cdf - double(i + 1) / n));
  }
  CHECK(ks < 0.01);
}

TEST_CASE("quantile map round trip and clipping") {
  RngStream s(73, 0);
  std::vector<double> x(20000);
  for (double& v : x) v = std::cbrt(s.std_normal());  // heavy-ish shape
  const QuantileMap map = QuantileMap::fit(x, 256);

  const double lo = map.quantiles().front();
  const double hi = map.quantiles().back();
  for (int i = 0; i < 1000; ++i) {
    const double v = lo + (hi - lo) * (0.001 + 0.998 * double(i) / 999.0);
    const double rt = map.invert(map.apply(v));
    CHECK(std::abs(rt - v) < 1e-9 * (1.0 + std::abs(v)));
  }
  // clipping: beyond the extreme quantiles maps like the extremes
  CHECK(map.apply(hi + 100.0) == map.apply(hi));
  CHECK(map.apply(lo - 100.0) == map.apply(lo));
  // median maps to ~0
  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::abs(map.apply(sorted[sorted.size() / 2])) < 0.02);
}

TEST_CASE("quantile map is monotone") {
  RngStream s(74, 0);
  std::vector<double> x(5000);
  for (double& v : x) v = s.std_normal();
  const QuantileMap map = QuantileMap::fit(x, 128);
  double prev = map.apply(-10.0);
  for (double v = -9.9; v < 10.0; v += 0.05) {
    const double cur = map.apply(v);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("quantile map degenerate and error cases") {
  std::vector<double> constant(2048, 3.0);
  const QuantileMap map = QuantileMap::fit(constant, 64);
  CHECK(map.apply(3.0) == 0.0);
  CHECK(map.apply(99.0) == 0.0);

  std::vector<double> tiny(10, 1.0);
  CHECK_THROWS_AS((void)QuantileMap::fit(tiny, 64), Error);
}

TEST_CASE("quantile map serializes and round-trips through json") {
  RngStream s(80, 0);
  std::vector<double> x(50000);
  for (double& v : x) v = s.std_normal();
  const QuantileMap map = QuantileMap::fit(x, 256);
  const QuantileMap back = QuantileMap::from_json(map.to_json());
  CHECK(back.n_quantiles() == 256);
  for (double v : {-2.5, -0.3, 0.0, 1.7}) {
    CHECK(back.apply(v) == map.apply(v));
    CHECK(back.invert(map.apply(v)) == map.invert(map.apply(v)));
  }
  CHECK_THROWS_AS((void)QuantileMap::from_json("{\"schema\":\"nope\"}"), Error);
  CHECK_THROWS_AS((void)QuantileMap::from_json("not json"), Error);
}

TEST_CASE("quantile map fits from a dataset") {
  TimeSeriesDataset ds(64, 64);
  RngStream s(81, 0);
  for (double& v : ds.data) v = s.exponential(1.0);
  const QuantileMap map = QuantileMap::fit(ds, 128);
  CHECK(map.n_quantiles() == 128);
  // median of Exp(1) is ln 2
  CHECK(std::abs(map.apply(std::log(2.0))) < 0.05);
}

TEST_CASE("quantile map on uniform input") {
  const int n = 200000;
  RngStream s(75, 0);
  std::vector<double> x(n);
  for (double& v : x) v = s.uniform_co();
  const QuantileMap map = QuantileMap::fit(x, 1024);
  CHECK(std::abs(map.quantiles()[511] - 0.5) < 0.01);
}

TEST_CASE("stft shapes match the benchmark configurations") {
  RngStream s(76, 0);
  std::vector<double> x(4096);
  for (double& v : x) v = s.std_normal();

  const StftConfig c65{128, 0.5};
  const StftArray a = stft(x, c65);
  CHECK(a.freq_bins == 65);
  CHECK(a.frames == 65);

  const StftConfig c129{256, 0.75};
  const StftArray b = stft(x, c129);
  CHECK(b.freq_bins == 129);
  CHECK(b.frames == 65);
}

TEST_CASE("istft inverts stft to 1e-9") {
  RngStream s(77, 0);
  std::vector<double> x(4096);
  for (double& v : x) v = s.std_normal();
  double scale = 0.0;
  for (double v : x) scale = std::max(scale, std::abs(v));

  for (const StftConfig& cfg : {StftConfig{128, 0.5}, StftConfig{256, 0.75}}) {
    const StftArray a = stft(x, cfg);
    const std::vector<double> y = istft(a, cfg);
    REQUIRE(y.size() == x.size());
    double worst = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) worst = std::max(worst, std::abs(y[t] - x[t]));
    CHECK(worst / scale < 1e-9);
  }
}

TEST_CASE("stft is linear") {
  RngStream s(78, 0);
  std::vector<double> x(1024), y(1024), z(1024);
  for (std::size_t t = 0; t < 1024; ++t) {
    x[t] = s.std_normal();
    y[t] = s.std_normal();
    z[t] = 2.0 * x[t] - 0.5 * y[t];
  }
  const StftConfig cfg{128, 0.5};
  const StftArray ax = stft(x, cfg), ay = stft(y, cfg), az = stft(z, cfg);
  double worst = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < az.re.size(); ++i) {
    worst = std::max(worst, std::abs(az.re[i] - (2.0 * ax.re[i] - 0.5 * ay.re[i])));
    worst = std::max(worst, std::abs(az.im[i] - (2.0 * ax.im[i] - 0.5 * ay.im[i])));
    scale = std::max({scale, std::abs(az.re[i]), std::abs(az.im[i])});
  }
  CHECK(worst / scale < 1e-10);
}

TEST_CASE("stft energy equals windowed-signal energy") {
  RngStream s(79, 0);
  std::vector<double> x(2048);
  for (double& v : x) v = s.std_normal();
  const StftConfig cfg{128, 0.5};
  const std::size_t hop = cfg.hop();
  const StftArray a = stft(x, cfg);

  // Parseval per frame: sum_k w_k |X_k|^2 = win_len * sum_t (w x)_t^2
  double spectral = 0.0;
  for (std::size_t b = 0; b < a.freq_bins; ++b) {
    const double w = (b == 0 || b == a.freq_bins - 1) ? 1.0 : 2.0;
    for (std::size_t m = 0; m < a.frames; ++m) {
      spectral += w * (a.real_at(b, m) * a.real_at(b, m) + a.imag_at(b, m) * a.imag_at(b, m));
    }
  }
  std::vector<double> padded(x.size() + 2 * (cfg.win_len / 2), 0.0);
  std::copy(x.begin(), x.end(), padded.begin() + long(cfg.win_len / 2));
  double windowed = 0.0;
  for (std::size_t m = 0; m < a.frames; ++m) {
    for (std::size_t t = 0; t < cfg.win_len; ++t) {
      const double w = 0.5 * (1.0 - std::cos(2.0 * M_PI * double(t) / double(cfg.win_len)));
      const double v = padded[m * hop + t] * w;
      windowed += v * v;
    }
  }
  CHECK(spectral == doctest::Approx(double(cfg.win_len) * windowed).epsilon(1e-10));
}

TEST_CASE("invalid stft configurations are rejected") {
  std::vector<double> x(1024, 1.0);
  CHECK_THROWS_AS((void)stft(x, StftConfig{128, 0.3}), Error);    // non-integer hop
  CHECK_THROWS_AS((void)stft(x, StftConfig{128, 0.25}), Error);   // hop does not divide win
  CHECK_THROWS_AS((void)stft(x, StftConfig{127, 0.5}), Error);    // odd window

  const StftConfig cfg{128, 0.5};
  StftArray a = stft(x, cfg);
  a.re.pop_back();
  CHECK_THROWS_AS((void)istft(a, cfg), Error);  // channel size mismatch
  StftArray b = stft(x, cfg);
  CHECK_THROWS_AS((void)istft(b, StftConfig{256, 0.75}), Error);  // bins mismatch
}

}  // TEST_SUITE
