#pragma once

#include <cstddef>
#include <vector>

#include "noisebench/noise_spec.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

/// I.i.d. Bernoulli-Gaussian noise: N(0, sigma_w^2) plus a Bernoulli(p)-gated
/// N(0, sigma_i^2) impulse at each sample.
std::vector<double> simulate_bg(const Bg& spec, std::size_t len, RngStream& stream);

/// I.i.d. symmetric alpha-stable noise, delta + gamma^{1/alpha} * standard.
std::vector<double> simulate_sas_series(const Sas& spec, std::size_t len, RngStream& stream);

}  // namespace noisebench
