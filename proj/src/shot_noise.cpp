#include "noisebench/shot_noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noisebench/errors.hpp"

namespace noisebench {

namespace {
constexpr double kSupportCut = 27.64;  // ln(1e12): exp pulse below 1e-12 * peak
}

double pulse_value(PulseShape shape, double sigma_d, double t) {
  require(sigma_d > 0.0, ErrorCategory::InvalidParameter, "sigma_d must be > 0");
  switch (shape) {
    case PulseShape::OneSidedExponential:
      if (t < 0.0) return 0.0;
      return std::exp(-t / sigma_d) / sigma_d;
    case PulseShape::LinearExponential:
      if (t < 0.0) return 0.0;
      return t / (sigma_d * sigma_d) * std::exp(-t / sigma_d);
    case PulseShape::Gaussian:
      return std::exp(-t * t / (2.0 * sigma_d * sigma_d)) /
             (sigma_d * std::sqrt(2.0 * std::numbers::pi));
  }
  return 0.0;
}

PulseIntegrals pulse_integrals(PulseShape shape, double sigma_d) {
  require(sigma_d > 0.0, ErrorCategory::InvalidParameter, "sigma_d must be > 0");
  switch (shape) {
    case PulseShape::OneSidedExponential:
      return {1.0, 1.0 / (2.0 * sigma_d)};
    case PulseShape::LinearExponential:
      return {1.0, 1.0 / (4.0 * sigma_d)};
    case PulseShape::Gaussian:
      return {1.0, 1.0 / (2.0 * sigma_d * std::sqrt(std::numbers::pi))};
  }
  return {0.0, 0.0};
}

void pulse_support(PulseShape shape, double sigma_d, double& t_min, double& t_max) {
  switch (shape) {
    case PulseShape::OneSidedExponential:
      t_min = 0.0;
      t_max = kSupportCut * sigma_d;
      return;
    case PulseShape::LinearExponential:
      // peak at t = sigma_d; tail t e^{-t} drops below 1e-12 e^{-1} near t ~ 32
      t_min = 0.0;
      t_max = (kSupportCut + 4.0) * sigma_d;
      return;
    case PulseShape::Gaussian:
      t_max = std::sqrt(2.0 * kSupportCut) * sigma_d;
      t_min = -t_max;
      return;
  }
}

std::vector<double> simulate_shot(const Shot& spec, std::size_t len, RngStream& stream) {
  require(len >= 1, ErrorCategory::InvalidParameter, "series length must be >= 1");
  validate(NoiseSpec(spec));
  const std::size_t grid = 2 * len;
  const double duration = double(grid - 1) * spec.dt;
  require(duration >= 100.0 * spec.sigma_d, ErrorCategory::InvalidParameter,
          "window too short: (2L-1) dt must be >= 100 sigma_d");

  double t_min = 0.0, t_max = 0.0;
  pulse_support(spec.pulse, spec.sigma_d, t_min, t_max);

  std::vector<double> x(grid, 0.0);
  const long long n_events = stream.poisson(spec.nu * duration);
  for (long long e = 0; e < n_events; ++e) {
    const double tau = duration * stream.uniform_co();
    const double amp = stream.exponential(spec.beta);
    // Grid samples reached by this pulse: tau + t_min <= m dt <= tau + t_max.
    const long long m_first = std::max<long long>(0, (long long)std::ceil((tau + t_min) / spec.dt));
    const long long m_last =
        std::min<long long>((long long)grid - 1, (long long)std::floor((tau + t_max) / spec.dt));
    for (long long m = m_first; m <= m_last; ++m) {
      x[std::size_t(m)] += amp * pulse_value(spec.pulse, spec.sigma_d, double(m) * spec.dt - tau);
    }
  }
  // Drop the first half to remove the start-up transient.
  return {x.begin() + long(len), x.end()};
}

}  // namespace noisebench
