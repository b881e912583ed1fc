#include "noisebench/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "noisebench/errors.hpp"
#include "noisebench/fft.hpp"
#include "noisebench/shot_noise.hpp"

namespace noisebench {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.5772156649015328606;
}  // namespace

double hurst_discrete_variations(std::span<const double> x, HurstKind kind) {
  require(x.size() >= 16, ErrorCategory::InvalidInput, "series too short (need >= 16)");
  std::vector<double> path;
  std::span<const double> b = x;
  if (kind == HurstKind::Fgn) {
    path.resize(x.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
      acc += x[t];
      path[t] = acc;
    }
    b = path;
  }
  double v[2] = {0.0, 0.0};
  for (std::size_t m = 1; m <= 2; ++m) {
    const std::size_t count = b.size() - 2 * m;
    double s = 0.0;
    for (std::size_t t = 0; t < count; ++t) {
      const double d = b[t + 2 * m] - 2.0 * b[t + m] + b[t];
      s += d * d;
    }
    v[m - 1] = s / double(count);
  }
  require(v[0] > 0.0 && v[1] > 0.0, ErrorCategory::DegenerateInput,
          "constant input has no variation");
  return 0.5 * std::log2(v[1] / v[0]);
}

double fdwn_d_whittle(std::span<const double> x) {
  const std::size_t n = x.size();
  require(n >= 128, ErrorCategory::InvalidInput, "series too short (need >= 128)");

  // Periodogram at Fourier frequencies j/n, j = 1 .. ceil(n/2)-1
  // (both f = 0 and the Nyquist bin are excluded).
  std::vector<std::complex<double>> spec(n / 2 + 1);
  fft::rfft(x, spec);
  const std::size_t m = (n + 1) / 2 - 1;
  std::vector<double> periodogram(m), log_freq_term(m);
  for (std::size_t j = 1; j <= m; ++j) {
    periodogram[j - 1] = std::norm(spec[j]) / double(n);
    log_freq_term[j - 1] = std::log(2.0 * std::sin(kPi * double(j) / double(n)));
  }

  // Profiled Whittle objective: ln(mean I_j / g_j) + mean ln g_j with
  // g_j = (2 sin pi f_j)^(-2d).
  auto objective = [&](double d) {
    double acc = 0.0, log_g_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      acc += periodogram[j] * std::exp(2.0 * d * log_freq_term[j]);
      log_g_sum += -2.0 * d * log_freq_term[j];
    }
    return std::log(acc / double(m)) + log_g_sum / double(m);
  };

  // Golden-section search on (-0.49, 0.49).
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = -0.49, hi = 0.49;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = objective(c), fd = objective(d);
  while (hi - lo > 1e-6) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = objective(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = objective(d);
    }
  }
  const double dhat = 0.5 * (lo + hi);
  require(std::isfinite(dhat) && std::isfinite(fc) && std::isfinite(fd),
          ErrorCategory::NoConvergence, "Whittle objective did not stay finite");
  return dhat;
}

double shot_event_rate(std::span<const double> x, PulseShape pulse, double sigma_d) {
  require(x.size() >= 2, ErrorCategory::InvalidInput, "series too short");
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= double(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= double(x.size() - 1);
  require(var > 0.0, ErrorCategory::DegenerateInput, "zero-variance input");
  const PulseIntegrals pi_ = pulse_integrals(pulse, sigma_d);
  return 2.0 * mean * mean * pi_.i2 / (var * pi_.i1 * pi_.i1);
}

BgFit bg_fit_em(std::span<const double> x) {
  const std::size_t n = x.size();
  require(n >= 256, ErrorCategory::InvalidInput, "series too short (need >= 256)");

  double m2 = 0.0;
  for (double v : x) m2 += v * v;
  m2 /= double(n);
  require(m2 > 0.0, ErrorCategory::DegenerateInput, "all-zero input");

  // Zero-mean two-component mixture; component 1 is the wide one.
  double v0 = 0.1 * m2, v1 = 10.0 * m2;
  double w1 = 0.5;
  double loglik = -std::numeric_limits<double>::infinity();
  int it = 0;
  const int max_iters = 500;
  for (; it < max_iters; ++it) {
    // Responsibilities of the wide component computed on a log scale:
    // r = 1 / (1 + exp(log odds of the narrow component)).
    const double log_ratio = 0.5 * std::log(v1 / v0);
    const double log_w = std::log((1.0 - w1) / w1);
    const double prec_diff = 0.5 * (1.0 / v0 - 1.0 / v1);
    double rs = 0.0, rx2 = 0.0, x2 = 0.0, ll = 0.0;
    const double c0 = -0.5 * std::log(2.0 * kPi * v0);
    const double c1 = -0.5 * std::log(2.0 * kPi * v1);
    for (double v : x) {
      const double q = v * v;
      const double t = log_w + log_ratio - prec_diff * q;
      const double r = 1.0 / (1.0 + std::exp(t));
      rs += r;
      rx2 += r * q;
      x2 += q;
      // log density: logsumexp of the two weighted component logs
      const double la = std::log1p(-w1) + c0 - 0.5 * q / v0;
      const double lb = std::log(w1) + c1 - 0.5 * q / v1;
      const double hi = std::max(la, lb);
      ll += hi + std::log(std::exp(la - hi) + std::exp(lb - hi));
    }
    const double prev = loglik;
    loglik = ll;
    // EM with fixed zero means is monotone in the log-likelihood; a real
    // decrease signals a numerical inconsistency.
    require(!std::isfinite(prev) || loglik >= prev - 1e-6 * (1.0 + std::abs(prev)),
            ErrorCategory::NumericalDesign, "EM log-likelihood decreased");
    w1 = rs / double(n);
    require(rs > 0.0 && double(n) - rs > 0.0, ErrorCategory::DegenerateFit,
            "mixture weight collapsed");
    v1 = rx2 / rs;
    v0 = (x2 - rx2) / (double(n) - rs);
    require(v0 > 1e-12 * m2 && v1 > 1e-12 * m2, ErrorCategory::DegenerateFit,
            "mixture component variance collapsed");
    if (std::isfinite(prev) && loglik - prev < 1e-6) {
      ++it;
      break;
    }
  }

  const double v_small = std::min(v0, v1);
  const double v_big = std::max(v0, v1);
  const double w_big = (v1 >= v0) ? w1 : 1.0 - w1;
  // Single-component data converges onto a likelihood ridge with a weak
  // split (theta ~ 1.1-1.3); treat anything close to equal scales as
  // unidentifiable rather than reporting a spurious impulse probability.
  const double theta = std::sqrt(v_big / v_small);
  require(theta > 1.5, ErrorCategory::DegenerateFit,
          "components indistinguishable (single-component data)");

  BgFit fit;
  fit.p_hat = w_big;
  fit.sigma_w_hat = std::sqrt(v_small);
  fit.sigma_i_hat = std::sqrt(v_big - v_small);
  fit.theta_hat = theta;
  fit.loglik = loglik;
  fit.iters = it;
  return fit;
}

SasFit sas_fit_from_log_moments(double mean_log_abs, double var_log_abs) {
  SasFit fit;
  const double t = 6.0 * var_log_abs / (kPi * kPi) - 0.5;
  if (t <= 0.0) {
    fit.alpha_hat = 2.0;
    fit.clamped = true;
  } else {
    fit.alpha_hat = 1.0 / std::sqrt(t);
    if (fit.alpha_hat > 2.0) {
      fit.alpha_hat = 2.0;
      fit.clamped = true;
    } else if (fit.alpha_hat < 0.05) {
      fit.alpha_hat = 0.05;
      fit.clamped = true;
    }
  }
  fit.gamma_hat = std::exp(fit.alpha_hat * mean_log_abs + kEulerGamma * (fit.alpha_hat - 1.0));
  return fit;
}

SasFit sas_fit_logmoments(std::span<const double> x) {
  require(x.size() >= 16, ErrorCategory::InvalidInput, "series too short");
  std::size_t zeros = 0;
  double mean = 0.0;
  std::size_t m = 0;
  for (double v : x) {
    if (v == 0.0) {
      ++zeros;
      continue;
    }
    mean += std::log(std::abs(v));
    ++m;
  }
  require(double(zeros) <= 0.01 * double(x.size()), ErrorCategory::InvalidInput,
          "more than 1% zero samples");
  require(m >= 16, ErrorCategory::DegenerateInput, "too few nonzero samples");
  mean /= double(m);
  double var = 0.0;
  for (double v : x) {
    if (v == 0.0) continue;
    const double y = std::log(std::abs(v)) - mean;
    var += y * y;
  }
  var /= double(m - 1);
  return sas_fit_from_log_moments(mean, var);
}

}  // namespace noisebench
