#pragma once

#include <complex>
#include <span>
#include <vector>

#include "noisebench/noise_spec.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

/// One second-order section, direct form: (b0 + b1 z^-1 + b2 z^-2) /
/// (1 + a1 z^-1 + a2 z^-2).  Design gain is distributed into the b's.
struct Biquad {
  double b0, b1, b2;
  double a1, a2;
};

struct SosCascade {
  std::vector<Biquad> sections;
  double gain = 1.0;  // extra overall factor; 1 after design

  int order() const noexcept { return int(sections.size()) * 2; }

  /// |H(e^{i 2 pi f})| of the cascade, f in cycles/sample.
  double magnitude(double f) const;
  std::complex<double> response(double f) const;

  /// Largest pole magnitude across sections.
  double max_pole_magnitude() const;
};

/// Digital Butterworth bandpass of the given final (even) order: analog
/// lowpass prototype of order/2, lowpass->bandpass transform, bilinear
/// transform with prewarped edges, emitted as order/2 stable biquads.
/// Band edges are digital frequencies in (0, 0.5).
SosCascade butterworth_bandpass(int order, double f_lo, double f_hi);

/// Single forward pass through the cascade (direct form II transposed).
std::vector<double> sos_filter(const SosCascade& sos, std::span<const double> x);

/// Forward-backward (zero-phase) filtering with odd-reflection edge padding
/// of length 3 * order; output length equals input length.
std::vector<double> zero_phase_filter(const SosCascade& sos, std::span<const double> x);

/// White standard normal sequence through the spec's zero-phase bandpass.
std::vector<double> simulate_bandlimited(const BandLimited& spec, std::size_t len,
                                         RngStream& stream);

}  // namespace noisebench
