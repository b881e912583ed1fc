#include "noisebench/impulsive.hpp"

#include <cmath>

#include "noisebench/errors.hpp"

namespace noisebench {

std::vector<double> simulate_bg(const Bg& spec, std::size_t len, RngStream& stream) {
  validate(NoiseSpec(spec));
  std::vector<double> x(len);
  for (double& v : x) {
    // Fixed three-draw pattern per sample keeps the sequence deterministic
    // regardless of the gating outcome.
    const double background = spec.sigma_w * stream.std_normal();
    const bool gate = stream.uniform_co() < spec.p;
    const double impulse = spec.sigma_i * stream.std_normal();
    v = background + (gate ? impulse : 0.0);
  }
  return x;
}

std::vector<double> simulate_sas_series(const Sas& spec, std::size_t len, RngStream& stream) {
  validate(NoiseSpec(spec));
  const double scale = std::pow(spec.gamma, 1.0 / spec.alpha);
  std::vector<double> x(len);
  for (double& v : x) v = spec.delta + scale * stream.sas_standard(spec.alpha);
  return x;
}

}  // namespace noisebench
