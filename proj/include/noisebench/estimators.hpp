#pragma once

#include <span>

#include "noisebench/noise_spec.hpp"

namespace noisebench {

enum class HurstKind { Fgn, Fbm };

/// Hurst index by the discrete-variations method with a second-order
/// difference filter at scales m = 1, 2.  FGN input is cumulatively summed
/// into an FBM-like path first.
double hurst_discrete_variations(std::span<const double> x, HurstKind kind);

/// Fractional difference parameter via the Whittle likelihood for the FDWN
/// spectral density (2 sin pi f)^(-2d) with profiled variance; golden-section
/// search over (-0.49, 0.49).
double fdwn_d_whittle(std::span<const double> x);

/// Shot-noise event rate, nu = 2 mean^2 I2 / (var I1^2), assuming
/// exponentially distributed pulse amplitudes.
double shot_event_rate(std::span<const double> x, PulseShape pulse, double sigma_d);

struct BgFit {
  double p_hat = 0.0;        // weight of the larger-variance component
  double sigma_w_hat = 0.0;  // background scale
  double sigma_i_hat = 0.0;  // impulse scale, sqrt(v_big - v_small)
  double theta_hat = 0.0;    // sqrt(v_big / v_small)
  double loglik = 0.0;
  int iters = 0;
};

/// Two-component zero-mean Gaussian mixture fitted by EM.  Collapsed or
/// indistinguishable components raise degenerate-fit.
BgFit bg_fit_em(std::span<const double> x);

struct SasFit {
  double alpha_hat = 0.0;
  double gamma_hat = 0.0;
  bool clamped = false;  // alpha hit the (0.05, 2] clamp
};

/// Alpha-stable parameters from the moments of ln|x|:
/// alpha = (6 Var/pi^2 - 1/2)^(-1/2), gamma = exp(alpha mean + C_e (alpha-1)).
SasFit sas_fit_logmoments(std::span<const double> x);

/// Same inversion applied to externally supplied log-moments.
SasFit sas_fit_from_log_moments(double mean_log_abs, double var_log_abs);

}  // namespace noisebench
