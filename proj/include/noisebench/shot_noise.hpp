#pragma once

#include <cstddef>
#include <vector>

#include "noisebench/noise_spec.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

/// Pulse function value p(t).  One-sided pulses are zero for t < 0.
double pulse_value(PulseShape shape, double sigma_d, double t);

struct PulseIntegrals {
  double i1;  // integral of p
  double i2;  // integral of p^2
};

/// Closed-form I1 and I2 of the pulse function.
PulseIntegrals pulse_integrals(PulseShape shape, double sigma_d);

/// Time support [t_min, t_max] outside which p(t) < 1e-12 * peak.
void pulse_support(PulseShape shape, double sigma_d, double& t_min, double& t_max);

/// Filtered-Poisson shot noise on a grid of step dt.  A length-2L window of
/// duration T = (2L-1) dt is populated with N ~ Poisson(nu T) events at
/// uniform continuous times with Exp(beta) amplitudes, pulses are summed
/// directly over their support, and the first L samples are discarded to
/// reach steady state.  Requires T >= 100 sigma_d.
std::vector<double> simulate_shot(const Shot& spec, std::size_t len, RngStream& stream);

}  // namespace noisebench
