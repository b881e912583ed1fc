#include "noisebench/power_law.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>

#include "noisebench/errors.hpp"
#include "noisebench/fft.hpp"

namespace noisebench {

double fgn_autocovariance(double H, double sigma_y2, long k) {
  require(H > 0.0 && H < 1.0, ErrorCategory::InvalidParameter, "Hurst index out of (0,1)");
  const double a = std::abs(double(k) - 1.0);
  const double b = std::abs(double(k) + 1.0);
  const double c = std::abs(double(k));
  const double e = 2.0 * H;
  return 0.5 * sigma_y2 * (std::pow(a, e) + std::pow(b, e) - 2.0 * std::pow(c, e));
}

double fdwn_autocovariance(double d, double sigma_eps2, long k) {
  require(d > -0.5 && d < 0.5, ErrorCategory::InvalidParameter, "fdwn d out of (-0.5,0.5)");
  double g = sigma_eps2 * std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
  for (long j = 1; j <= k; ++j) g *= (double(j) - 1.0 + d) / (double(j) - d);
  return g;
}

std::vector<double> fdwn_autocovariance_seq(double d, double sigma_eps2, std::size_t n_lags) {
  require(d > -0.5 && d < 0.5, ErrorCategory::InvalidParameter, "fdwn d out of (-0.5,0.5)");
  std::vector<double> g(n_lags);
  if (n_lags == 0) return g;
  g[0] = sigma_eps2 * std::exp(std::lgamma(1.0 - 2.0 * d) - 2.0 * std::lgamma(1.0 - d));
  for (std::size_t k = 1; k < n_lags; ++k) {
    g[k] = g[k - 1] * (double(k) - 1.0 + d) / (double(k) - d);
  }
  return g;
}

FgnSampler::FgnSampler(double H, double sigma_y2, std::size_t len) : len_(len) {
  require(len >= 1, ErrorCategory::InvalidParameter, "series length must be >= 1");
  require(H > 0.0 && H < 1.0, ErrorCategory::InvalidParameter, "Hurst index out of (0,1)");
  require(sigma_y2 > 0.0, ErrorCategory::InvalidParameter, "sigma_y2 must be > 0");
  embed_size_ = std::bit_ceil(std::max<std::size_t>(2 * len, 2));
  const std::size_t m = embed_size_;

  // First row of the circulant: acvf out to lag m/2, mirrored.
  std::vector<std::complex<double>> row(m);
  for (std::size_t j = 0; j <= m / 2; ++j) row[j] = fgn_autocovariance(H, sigma_y2, long(j));
  for (std::size_t j = m / 2 + 1; j < m; ++j) row[j] = row[m - j];

  std::vector<std::complex<double>> lambda(m);
  fft::dft(row, lambda, /*inverse=*/false);

  double max_ev = 0.0;
  for (const auto& l : lambda) max_ev = std::max(max_ev, l.real());
  scale_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double ev = lambda[k].real();
    require(ev >= -1e-8 * max_ev, ErrorCategory::EmbeddingFailure,
            "circulant embedding produced a significantly negative eigenvalue");
    scale_[k] = std::sqrt(std::max(ev, 0.0) / double(m));
  }
}

void FgnSampler::sample(RngStream& stream, std::span<double> out) const {
  require(out.size() == len_, ErrorCategory::InvalidInput, "output span length mismatch");
  const std::size_t m = embed_size_;
  std::vector<std::complex<double>> z(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double u = stream.std_normal();
    const double v = stream.std_normal();
    z[k] = {scale_[k] * u, scale_[k] * v};
  }
  std::vector<std::complex<double>> w(m);
  fft::dft(z, w, /*inverse=*/false);
  for (std::size_t t = 0; t < len_; ++t) out[t] = w[t].real();
}

FdwnSampler::FdwnSampler(double d, double sigma_eps2, std::size_t len) : len_(len) {
  require(len >= 1, ErrorCategory::InvalidParameter, "series length must be >= 1");
  const std::vector<double> g = fdwn_autocovariance_seq(d, sigma_eps2, len);

  innov_sd_.resize(len);
  innov_sd_[0] = std::sqrt(g[0]);
  if (len == 1) return;

  row_.assign(len, 0);
  phi_.resize(len * (len - 1) / 2);
  for (std::size_t n = 1; n < len; ++n) row_[n] = (n - 1) * n / 2;

  // Durbin-Levinson: row n holds the coefficients of the best linear
  // predictor of X_n from X_{n-1}..X_0; v_n is the innovation variance.
  double v = g[0];
  std::vector<double> prev(len, 0.0), cur(len, 0.0);
  for (std::size_t n = 1; n < len; ++n) {
    double acc = g[n];
    for (std::size_t k = 1; k < n; ++k) acc -= prev[k] * g[n - k];
    const double kappa = acc / v;
    cur[n] = kappa;
    for (std::size_t k = 1; k < n; ++k) cur[k] = prev[k] - kappa * prev[n - k];
    v *= (1.0 - kappa * kappa);
    require(v > 0.0, ErrorCategory::NumericalDesign,
            "Durbin-Levinson innovation variance collapsed");
    innov_sd_[n] = std::sqrt(v);
    double* rp = phi_.data() + row_[n];
    for (std::size_t k = 1; k <= n; ++k) rp[k - 1] = cur[k];
    std::swap(prev, cur);
  }
}

void FdwnSampler::sample(RngStream& stream, std::span<double> out) const {
  require(out.size() == len_, ErrorCategory::InvalidInput, "output span length mismatch");
  out[0] = innov_sd_[0] * stream.std_normal();
  for (std::size_t n = 1; n < len_; ++n) {
    const double* rp = phi_.data() + row_[n];
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += rp[k - 1] * out[n - k];
    out[n] = acc + innov_sd_[n] * stream.std_normal();
  }
}

std::vector<double> simulate_fgn(const Fgn& spec, std::size_t len, RngStream& stream) {
  FgnSampler sampler(spec.H, spec.sigma_y2, len);
  std::vector<double> out(len);
  sampler.sample(stream, out);
  return out;
}

std::vector<double> simulate_fbm(const Fbm& spec, std::size_t len, RngStream& stream) {
  require(len >= 1, ErrorCategory::InvalidParameter, "series length must be >= 1");
  std::vector<double> out(len, 0.0);
  if (len == 1) return out;  // B(0) = 0
  std::vector<double> incr(len - 1);
  FgnSampler sampler(spec.H, spec.sigma_y2, len - 1);
  sampler.sample(stream, incr);
  double acc = 0.0;
  for (std::size_t n = 1; n < len; ++n) {
    acc += incr[n - 1];
    out[n] = acc;
  }
  return out;
}

std::vector<double> simulate_fdwn(const Fdwn& spec, std::size_t len, RngStream& stream) {
  FdwnSampler sampler(spec.d, spec.sigma_eps2, len);
  std::vector<double> out(len);
  sampler.sample(stream, out);
  return out;
}

}  // namespace noisebench
