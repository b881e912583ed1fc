#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "noisebench/errors.hpp"
#include "noisebench/simulate.hpp"
#include "noisebench/spectral.hpp"
#include "test_oracles.hpp"

using namespace noisebench;

TEST_SUITE("spectral") {

TEST_CASE("dpss tapers: concentration and orthonormality at benchmark size") {
  const DpssSet set = dpss(4096, 4.0, 7);
  CHECK(set.eigenvalues[0] > 0.99999);
  CHECK(set.eigenvalues[6] > 0.9);
  for (int j = 1; j < 7; ++j) CHECK(set.eigenvalues[j] < set.eigenvalues[j - 1]);
  for (int a = 0; a < 7; ++a) {
    for (int b = a; b < 7; ++b) {
      double dot = 0.0;
      for (std::size_t t = 0; t < 4096; ++t) dot += set.tapers[a][t] * set.tapers[b][t];
      CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
  }
}

TEST_CASE("dpss parameter validation") {
  CHECK_THROWS_AS((void)dpss(512, 4.0, 8), Error);   // k > 2nw-1
  CHECK_THROWS_AS((void)dpss(512, 4.0, 0), Error);
  CHECK_THROWS_AS((void)dpss(4, 4.0, 7), Error);     // 2nw-1 >= N
}

TEST_CASE("multitaper of white noise is flat at 2 sigma^2") {
  const MultitaperConfig cfg{4.0, 7, 1024};
  auto ds = simulate_dataset(Fgn{0.5, 1.0}, 4096, 1024, 313);

  const PsdEstimate med = median_psd(ds, cfg);
  CHECK(med.freqs.size() == 513);
  CHECK(med.freqs.front() == 0.0);
  CHECK(med.freqs.back() == doctest::Approx(0.5));

  // Mean aggregation is the clean Parseval check: interior level 2 sigma^2.
  const DpssSet tapers = dpss(1024, cfg.nw, cfg.k);
  std::vector<double> level(med.values.size(), 0.0);
  for (std::size_t i = 0; i < ds.n_series; ++i) {
    const PsdEstimate p = multitaper_psd(ds.series(i), cfg, &tapers);
    for (std::size_t k = 0; k < level.size(); ++k) level[k] += p.values[k];
  }
  for (double& v : level) v /= double(ds.n_series);
  for (std::size_t k = 2; k + 2 < level.size(); ++k) {
    CHECK(level[k] > 2.0 * 0.94);
    CHECK(level[k] < 2.0 * 1.06);
  }

  // Median aggregation sits at the chi-square(2k) median, a factor
  // qchisq(0.5, 14)/14 = 0.9528 below the mean.
  const double med_factor = 0.9528;
  for (std::size_t k = 2; k + 2 < med.values.size(); ++k) {
    CHECK(med.values[k] > 2.0 * med_factor * 0.95);
    CHECK(med.values[k] < 2.0 * med_factor * 1.05);
  }
}

TEST_CASE("multitaper Parseval normalization") {
  const MultitaperConfig cfg{4.0, 7, 1024};
  auto ds = simulate_dataset(Fgn{0.5, 1.0}, 256, 1024, 314);
  std::vector<double> ratios(ds.n_series);
  const DpssSet tapers = dpss(1024, cfg.nw, cfg.k);
  for (std::size_t i = 0; i < ds.n_series; ++i) {
    const PsdEstimate p = multitaper_psd(ds.series(i), cfg, &tapers);
    double integral = 0.0;
    for (double v : p.values) integral += v;
    integral /= double(cfg.nfft);
    ratios[i] = integral / oracles::variance(ds.series(i));
  }
  std::sort(ratios.begin(), ratios.end());
  const double median_ratio = ratios[ratios.size() / 2];
  CHECK(median_ratio > 0.98);
  CHECK(median_ratio < 1.02);
}

TEST_CASE("multitaper localizes a sinusoid") {
  const std::size_t n = 1024;
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) {
    x[t] = std::sin(2.0 * std::numbers::pi * 0.125 * double(t));
  }
  const MultitaperConfig cfg{4.0, 7, 1024};
  const PsdEstimate p = multitaper_psd(x, cfg);
  std::size_t peak = 0;
  for (std::size_t k = 1; k < p.values.size(); ++k) {
    if (p.values[k] > p.values[peak]) peak = k;
  }
  CHECK(p.freqs[peak] == doctest::Approx(0.125).epsilon(0.002));
  // energy at 0.2 sits on the Slepian sidelobe floor, > 50 dB down
  CHECK(p.values[std::size_t(0.2 * 1024)] < p.values[peak] * 1e-5);
}

TEST_CASE("multitaper rejects zero input and oversize series") {
  const MultitaperConfig cfg{4.0, 7, 256};
  std::vector<double> zeros(256, 0.0);
  CHECK_THROWS_AS((void)multitaper_psd(zeros, cfg), Error);
  std::vector<double> big(512, 1.0);
  CHECK_THROWS_AS((void)multitaper_psd(big, cfg), Error);
}

TEST_CASE("median psd of identical series equals the single-series psd") {
  auto one = simulate_dataset(Fgn{0.5, 1.0}, 1, 512, 99);
  TimeSeriesDataset ds(8, 512);
  for (std::size_t i = 0; i < 8; ++i) {
    auto src = one.series(0);
    std::copy(src.begin(), src.end(), ds.series(i).begin());
  }
  const MultitaperConfig cfg{4.0, 7, 512};
  const PsdEstimate med = median_psd(ds, cfg);
  const PsdEstimate single = multitaper_psd(one.series(0), cfg);
  for (std::size_t k = 0; k < med.values.size(); ++k) CHECK(med.values[k] == single.values[k]);
}

TEST_CASE("geodesic distance: identity, scale invariance, symmetry") {
  auto ds = simulate_dataset(Fgn{0.8, 1.0}, 8, 512, 5);
  const MultitaperConfig cfg{4.0, 7, 512};
  const PsdEstimate p = median_psd(ds, cfg);
  CHECK(geodesic_distance(p, p) == 0.0);

  for (double kappa : {1e-3, 7.3, 1e3}) {
    PsdEstimate scaled = p;
    for (double& v : scaled.values) v *= kappa;
    CHECK(geodesic_distance(scaled, p) < 1e-12);
  }

  auto ds2 = simulate_dataset(Fgn{0.2, 1.0}, 8, 512, 6);
  const PsdEstimate q = median_psd(ds2, cfg);
  CHECK(geodesic_distance(p, q) == geodesic_distance(q, p));
}

TEST_CASE("geodesic distance: hand-computed half-bins value") {
  PsdEstimate pt, pg;
  const std::size_t n = 2048;
  for (std::size_t k = 0; k < n; ++k) {
    const double f = 0.5 * double(k) / double(n - 1);
    pt.freqs.push_back(f);
    pg.freqs.push_back(f);
    pt.values.push_back(1.0);
    pg.values.push_back(k < n / 2 ? std::numbers::e : 1.0);
  }
  CHECK(std::abs(geodesic_distance(pg, pt) - 0.5) < 1e-12);
}

TEST_CASE("geodesic distance input validation") {
  PsdEstimate a, b;
  a.freqs = {0.0, 0.25, 0.5};
  a.values = {1.0, 1.0, 1.0};
  b = a;
  b.freqs[1] = 0.26;
  CHECK_THROWS_AS((void)geodesic_distance(a, b), Error);
  b = a;
  b.values[2] = 0.0;
  CHECK_THROWS_AS((void)geodesic_distance(b, a), Error);
  PsdEstimate c;
  c.freqs = {0.0, 0.25};
  c.values = {1.0, 1.0};
  CHECK_THROWS_AS((void)geodesic_distance(a, c), Error);
}

TEST_CASE("loglog slope on an exact power law") {
  PsdEstimate p;
  for (std::size_t k = 0; k <= 512; ++k) {
    p.freqs.push_back(double(k) / 1024.0);
    p.values.push_back(k == 0 ? 1.0 : 3.7 / (double(k) / 1024.0));
  }
  CHECK(loglog_slope(p, 0.002, 0.05) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK_THROWS_AS((void)loglog_slope(p, 0.4999, 0.5), Error);   // too few bins
  CHECK_THROWS_AS((void)loglog_slope(p, 0.0, 0.05), Error);     // f_min must be > 0
}

TEST_CASE("white median psd has zero slope") {
  const MultitaperConfig cfg{4.0, 7, 1024};
  auto ds = simulate_dataset(Fgn{0.5, 1.0}, 512, 1024, 31);
  const PsdEstimate med = median_psd(ds, cfg);
  CHECK(std::abs(loglog_slope(med, 0.01, 0.4)) < 0.05);
}

TEST_CASE("shot-noise psd shape is invariant in the event rate") {
  // The fluctuation spectrum scales by a constant in nu; the deterministic
  // mean (a DC line whose power goes as nu^2) is removed per series so the
  // shape comparison is not dominated by the taper mainlobe around f = 0.
  const MultitaperConfig cfg{4.0, 7, 2048};
  auto demean = [](TimeSeriesDataset ds) {
    for (std::size_t i = 0; i < ds.n_series; ++i) {
      auto x = ds.series(i);
      const double m = oracles::mean(x);
      for (double& v : x) v -= m;
    }
    return ds;
  };
  auto lo = demean(simulate_dataset(Shot{0.5, 1.0, 1.0, 0.1, PulseShape::OneSidedExponential},
                                    512, 2048, 61));
  auto hi = demean(simulate_dataset(Shot{2.0, 1.0, 1.0, 0.1, PulseShape::OneSidedExponential},
                                    512, 2048, 62));
  const PsdEstimate p_lo = median_psd(lo, cfg);
  const PsdEstimate p_hi = median_psd(hi, cfg);
  CHECK(geodesic_distance(p_hi, p_lo) < 0.05);
}

}  // TEST_SUITE
