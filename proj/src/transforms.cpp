#include "noisebench/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include <json.hpp>

#include "noisebench/errors.hpp"
#include "noisebench/fft.hpp"

namespace noisebench {

namespace {
constexpr double kPi = std::numbers::pi;
}

double normal_inverse_cdf(double p) {
  require(p > 0.0 && p < 1.0, ErrorCategory::InvalidParameter,
          "normal_inverse_cdf needs p in (0, 1)");
  // Wichura's algorithm AS241 (PPND16).
  const double q = p - 0.5;
  double r;
  if (std::abs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double v;
  if (r <= 5.0) {
    r -= 1.6;
    v = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    v = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -v : v;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

MinMaxScaler MinMaxScaler::fit(const double* data, std::size_t n_rows, std::size_t n_features) {
  require(n_rows > 0 && n_features > 0, ErrorCategory::InvalidInput,
          "min-max fit needs nonempty data");
  MinMaxScaler s;
  s.mins_.assign(n_features, std::numeric_limits<double>::infinity());
  s.maxs_.assign(n_features, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t f = 0; f < n_features; ++f) {
      const double v = data[r * n_features + f];
      s.mins_[f] = std::min(s.mins_[f], v);
      s.maxs_[f] = std::max(s.maxs_[f], v);
    }
  }
  return s;
}

MinMaxScaler MinMaxScaler::fit(const TimeSeriesDataset& ds) {
  require(!ds.empty() && ds.channels == 1, ErrorCategory::InvalidInput,
          "min-max fit expects a nonempty single-channel dataset");
  return fit(ds.data.data(), ds.n_series, ds.series_len);
}

double MinMaxScaler::apply_one(std::size_t f, double x) const {
  const double lo = mins_.at(f), hi = maxs_.at(f);
  if (hi == lo) return 0.0;
  return 2.0 * (x - lo) / (hi - lo) - 1.0;
}

double MinMaxScaler::invert_one(std::size_t f, double y) const {
  const double lo = mins_.at(f), hi = maxs_.at(f);
  if (hi == lo) return lo;
  return lo + (y + 1.0) / 2.0 * (hi - lo);
}

TimeSeriesDataset MinMaxScaler::apply(const TimeSeriesDataset& ds) const {
  require(ds.series_len == n_features() && ds.channels == 1, ErrorCategory::InvalidInput,
          "dataset does not match fitted feature count");
  TimeSeriesDataset out = ds;
  for (std::size_t i = 0; i < ds.n_series; ++i) {
    for (std::size_t f = 0; f < ds.series_len; ++f) {
      out.data[i * ds.series_len + f] = apply_one(f, ds.data[i * ds.series_len + f]);
    }
  }
  return out;
}

TimeSeriesDataset MinMaxScaler::invert(const TimeSeriesDataset& ds) const {
  require(ds.series_len == n_features() && ds.channels == 1, ErrorCategory::InvalidInput,
          "dataset does not match fitted feature count");
  TimeSeriesDataset out = ds;
  for (std::size_t i = 0; i < ds.n_series; ++i) {
    for (std::size_t f = 0; f < ds.series_len; ++f) {
      out.data[i * ds.series_len + f] = invert_one(f, ds.data[i * ds.series_len + f]);
    }
  }
  return out;
}

QuantileMap QuantileMap::fit(std::span<const double> pooled, int n_q) {
  require(n_q >= 2, ErrorCategory::InvalidParameter, "need at least 2 quantiles");
  require(pooled.size() >= std::size_t(n_q), ErrorCategory::InvalidInput,
          "need at least n_q pooled samples");
  std::vector<double> sorted(pooled.begin(), pooled.end());
  std::sort(sorted.begin(), sorted.end());

  QuantileMap map;
  map.quantiles_.resize(n_q);
  map.probs_.resize(n_q);
  const double n1 = double(sorted.size()) - 1.0;
  for (int j = 0; j < n_q; ++j) {
    const double p = (double(j) + 0.5) / double(n_q);
    map.probs_[j] = p;
    const double pos = p * n1;
    const std::size_t lo = std::size_t(std::floor(pos));
    const double frac = pos - double(lo);
    const double q = (lo + 1 < sorted.size())
                         ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
                         : sorted[lo];
    map.quantiles_[j] = q;
  }
  return map;
}

QuantileMap QuantileMap::fit(const TimeSeriesDataset& ds, int n_q, std::size_t channel) {
  require(!ds.empty() && channel < ds.channels, ErrorCategory::InvalidInput,
          "quantile fit needs a nonempty dataset and a valid channel");
  std::vector<double> pooled;
  pooled.reserve(ds.n_series * ds.series_len);
  for (std::size_t i = 0; i < ds.n_series; ++i) {
    const auto x = ds.series(i, channel);
    pooled.insert(pooled.end(), x.begin(), x.end());
  }
  return fit(pooled, n_q);
}

std::string QuantileMap::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "nbts-quantile-map/1";
  j["n_quantiles"] = quantiles_.size();
  j["quantiles"] = quantiles_;
  return j.dump(2);
}

QuantileMap QuantileMap::from_json(const std::string& text) {
  QuantileMap map;
  try {
    const auto j = nlohmann::json::parse(text);
    require(j.at("schema").get<std::string>() == "nbts-quantile-map/1",
            ErrorCategory::Format, "unknown quantile map schema");
    map.quantiles_ = j.at("quantiles").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::Parse, std::string("invalid quantile map: ") + e.what());
  }
  require(map.quantiles_.size() >= 2, ErrorCategory::Format, "quantile map too small");
  require(std::is_sorted(map.quantiles_.begin(), map.quantiles_.end()),
          ErrorCategory::Format, "quantile values must be non-decreasing");
  const int n_q = int(map.quantiles_.size());
  map.probs_.resize(n_q);
  for (int j2 = 0; j2 < n_q; ++j2) map.probs_[j2] = (double(j2) + 0.5) / double(n_q);
  return map;
}

double QuantileMap::apply(double x) const {
  const auto& q = quantiles_;
  const auto& p = probs_;
  // Clip to the fitted extremes.
  if (x <= q.front()) x = q.front();
  if (x >= q.back()) x = q.back();
  if (q.front() == q.back()) return 0.0;  // constant training data

  // Piecewise-linear CDF.  Ties in the fitted quantiles are resolved by
  // averaging the leftmost and rightmost matching probabilities, which keeps
  // the map monotone and makes apply/invert mutually consistent.
  const auto lo_it = std::lower_bound(q.begin(), q.end(), x);
  const auto hi_it = std::upper_bound(q.begin(), q.end(), x);
  double prob;
  if (lo_it != hi_it) {
    const int lo = int(lo_it - q.begin());
    const int hi = int(hi_it - q.begin()) - 1;
    prob = 0.5 * (p[lo] + p[hi]);
  } else {
    const int hi = int(lo_it - q.begin());
    const int lo = hi - 1;  // hi >= 1 because x > q.front() here
    const double t = (x - q[lo]) / (q[hi] - q[lo]);
    prob = p[lo] + t * (p[hi] - p[lo]);
  }
  return normal_inverse_cdf(prob);
}

double QuantileMap::invert(double y) const {
  const auto& q = quantiles_;
  const auto& p = probs_;
  double prob = normal_cdf(y);
  if (prob <= p.front()) return q.front();
  if (prob >= p.back()) return q.back();
  const auto it = std::upper_bound(p.begin(), p.end(), prob);
  const int hi = int(it - p.begin());
  const int lo = hi - 1;
  const double t = (prob - p[lo]) / (p[hi] - p[lo]);
  return q[lo] + t * (q[hi] - q[lo]);
}

void QuantileMap::apply(std::span<const double> in, std::span<double> out) const {
  require(in.size() == out.size(), ErrorCategory::InvalidInput, "span size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = apply(in[i]);
}

void QuantileMap::invert(std::span<const double> in, std::span<double> out) const {
  require(in.size() == out.size(), ErrorCategory::InvalidInput, "span size mismatch");
  for (std::size_t i = 0; i < in.size(); ++i) out[i] = invert(in[i]);
}

std::size_t StftConfig::hop() const {
  require(win_len >= 2 && win_len % 2 == 0, ErrorCategory::InvalidParameter,
          "window length must be even and >= 2");
  const double h = double(win_len) * (1.0 - overlap);
  const std::size_t hop = std::size_t(std::llround(h));
  require(hop >= 1 && std::abs(h - double(hop)) < 1e-9, ErrorCategory::InvalidParameter,
          "overlap does not give an integer hop");
  return hop;
}

namespace {

// Periodic Hann window.
std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t t = 0; t < n; ++t) {
    w[t] = 0.5 * (1.0 - std::cos(2.0 * kPi * double(t) / double(n)));
  }
  return w;
}

// COLA check: the shifted window sum must be constant across hop phases.
void require_cola(const std::vector<double>& w, std::size_t hop) {
  require(w.size() % hop == 0, ErrorCategory::InvalidParameter,
          "hop must divide the window length");
  std::vector<double> phase_sum(hop, 0.0);
  for (std::size_t t = 0; t < w.size(); ++t) phase_sum[t % hop] += w[t];
  const double ref = phase_sum[0];
  for (double s : phase_sum) {
    require(std::abs(s - ref) <= 1e-10 * std::abs(ref), ErrorCategory::InvalidParameter,
            "window/overlap configuration violates constant overlap-add");
  }
}

}  // namespace

StftArray stft(std::span<const double> x, const StftConfig& cfg) {
  const std::size_t hop = cfg.hop();
  const std::vector<double> w = hann_window(cfg.win_len);
  require_cola(w, hop);
  require(!x.empty(), ErrorCategory::InvalidInput, "empty signal");

  const std::size_t pad = cfg.win_len / 2;
  // Zero-extend so frames tile the padded signal exactly.
  std::size_t padded_len = x.size() + 2 * pad;
  const std::size_t rem = (padded_len - cfg.win_len) % hop;
  if (rem != 0) padded_len += hop - rem;
  const std::size_t frames = (padded_len - cfg.win_len) / hop + 1;
  const std::size_t bins = cfg.win_len / 2 + 1;

  std::vector<double> padded(padded_len, 0.0);
  std::copy(x.begin(), x.end(), padded.begin() + long(pad));

  StftArray out;
  out.freq_bins = bins;
  out.frames = frames;
  out.signal_len = x.size();
  out.re.resize(bins * frames);
  out.im.resize(bins * frames);

  std::vector<double> seg(cfg.win_len);
  std::vector<std::complex<double>> spec(bins);
  for (std::size_t m = 0; m < frames; ++m) {
    const double* src = padded.data() + m * hop;
    for (std::size_t t = 0; t < cfg.win_len; ++t) seg[t] = src[t] * w[t];
    fft::rfft(seg, spec);
    for (std::size_t b = 0; b < bins; ++b) {
      out.real_at(b, m) = spec[b].real();
      out.imag_at(b, m) = spec[b].imag();
    }
  }
  return out;
}

std::vector<double> istft(const StftArray& s, const StftConfig& cfg) {
  const std::size_t hop = cfg.hop();
  const std::vector<double> w = hann_window(cfg.win_len);
  require_cola(w, hop);
  require(s.freq_bins == cfg.win_len / 2 + 1, ErrorCategory::InvalidInput,
          "STFT bin count does not match the window length");
  require(s.frames >= 1, ErrorCategory::InvalidInput, "empty STFT");
  require(s.re.size() == s.freq_bins * s.frames && s.im.size() == s.re.size(),
          ErrorCategory::InvalidInput, "STFT channel sizes do not match dimensions");

  const std::size_t pad = cfg.win_len / 2;
  const std::size_t padded_len = (s.frames - 1) * hop + cfg.win_len;
  require(pad + s.signal_len <= padded_len, ErrorCategory::InvalidInput,
          "stored signal length exceeds the frame span");

  std::vector<double> acc(padded_len, 0.0), den(padded_len, 0.0);
  std::vector<std::complex<double>> spec(s.freq_bins);
  std::vector<double> seg(cfg.win_len);
  for (std::size_t m = 0; m < s.frames; ++m) {
    for (std::size_t b = 0; b < s.freq_bins; ++b) {
      spec[b] = {s.real_at(b, m), s.imag_at(b, m)};
    }
    fft::irfft(spec, seg);
    const std::size_t off = m * hop;
    for (std::size_t t = 0; t < cfg.win_len; ++t) {
      acc[off + t] += w[t] * seg[t] / double(cfg.win_len);
      den[off + t] += w[t] * w[t];
    }
  }
  std::vector<double> y(s.signal_len);
  for (std::size_t t = 0; t < s.signal_len; ++t) {
    const double d = den[pad + t];
    require(d > 1e-12, ErrorCategory::InvalidInput,
            "overlap-add weight vanished inside the signal span");
    y[t] = acc[pad + t] / d;
  }
  return y;
}

}  // namespace noisebench
