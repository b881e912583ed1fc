#include "noisebench/butterworth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "noisebench/errors.hpp"

namespace noisebench {

namespace {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

}  // namespace

std::complex<double> SosCascade::response(double f) const {
  const cplx z1 = std::exp(cplx(0.0, -2.0 * kPi * f));  // z^-1
  const cplx z2 = z1 * z1;
  cplx h = gain;
  for (const auto& s : sections) {
    h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
  }
  return h;
}

double SosCascade::magnitude(double f) const { return std::abs(response(f)); }

double SosCascade::max_pole_magnitude() const {
  double m = 0.0;
  for (const auto& s : sections) {
    // roots of z^2 + a1 z + a2
    const cplx disc = std::sqrt(cplx(s.a1 * s.a1 - 4.0 * s.a2, 0.0));
    m = std::max(m, std::abs((-s.a1 + disc) / 2.0));
    m = std::max(m, std::abs((-s.a1 - disc) / 2.0));
  }
  return m;
}

SosCascade butterworth_bandpass(int order, double f_lo, double f_hi) {
  require(order > 0 && order % 2 == 0, ErrorCategory::InvalidParameter,
          "bandpass order must be a positive even integer");
  require(f_lo > 0.0 && f_lo < f_hi && f_hi < 0.5, ErrorCategory::InvalidParameter,
          "band edges must satisfy 0 < f_lo < f_hi < 0.5");

  const int n = order / 2;  // analog lowpass prototype order

  // Prewarped analog edges for the bilinear map s = (z-1)/(z+1).
  const double w_lo = std::tan(kPi * f_lo);
  const double w_hi = std::tan(kPi * f_hi);
  const double bw = w_hi - w_lo;
  const double w0sq = w_lo * w_hi;

  // Butterworth lowpass prototype poles on the unit circle, left half plane.
  std::vector<cplx> lp_poles(n);
  for (int k = 0; k < n; ++k) {
    const double theta = kPi * (2.0 * k + 1.0) / (2.0 * n) + kPi / 2.0;
    lp_poles[k] = std::exp(cplx(0.0, theta));
  }

  // Lowpass -> bandpass: each prototype pole splits into a conjugate-related
  // pair; n zeros appear at s = 0.  H_bp gain factor is bw^n.
  std::vector<cplx> bp_poles;
  bp_poles.reserve(2 * n);
  for (const cplx& p : lp_poles) {
    const cplx half = 0.5 * bw * p;
    const cplx root = std::sqrt(half * half - w0sq);
    bp_poles.push_back(half + root);
    bp_poles.push_back(half - root);
  }

  // Bilinear transform z = (1+s)/(1-s).  Analog zeros at s=0 map to z=1;
  // the n-pole degree deficit adds n zeros at z=-1.
  // Digital gain = bw^n * prod(1 - s_zero) / prod(1 - s_pole); zeros at 0
  // contribute factors of 1.
  std::vector<cplx> z_poles;
  z_poles.reserve(2 * n);
  cplx denom = 1.0;
  for (const cplx& s : bp_poles) {
    z_poles.push_back((1.0 + s) / (1.0 - s));
    denom *= (1.0 - s);
  }
  const cplx gain_c = std::pow(cplx(bw, 0.0), n) / denom;
  double gain = gain_c.real();
  require(std::abs(gain_c.imag()) < 1e-9 * std::abs(gain) + 1e-300,
          ErrorCategory::NumericalDesign, "bandpass design gain is not real");
  require(gain > 0.0, ErrorCategory::NumericalDesign, "bandpass design gain not positive");

  // Group the 2n digital poles into n conjugate pairs.  Poles with positive
  // imaginary part are matched with their conjugates; order pairs by
  // closeness to the unit circle so the most selective sections come first.
  std::vector<cplx> upper;
  for (const cplx& p : z_poles) {
    if (p.imag() > 0.0) upper.push_back(p);
  }
  require(upper.size() == std::size_t(n), ErrorCategory::NumericalDesign,
          "expected n conjugate pole pairs in bandpass design");
  std::sort(upper.begin(), upper.end(), [](const cplx& a, const cplx& b) {
    const double ra = std::abs(a), rb = std::abs(b);
    if (ra != rb) return ra > rb;
    return a.real() < b.real();
  });

  // Each section takes one zero at z=+1 and one at z=-1, i.e. numerator
  // z^2 - 1, which suppresses DC and Nyquist in every biquad.  The design
  // gain is spread evenly across sections for dynamic-range balance.
  const double g_section = std::pow(gain, 1.0 / n);
  SosCascade sos;
  sos.sections.reserve(n);
  for (const cplx& p : upper) {
    Biquad s{};
    s.b0 = g_section;
    s.b1 = 0.0;
    s.b2 = -g_section;
    s.a1 = -2.0 * p.real();
    s.a2 = std::norm(p);
    sos.sections.push_back(s);
  }
  sos.gain = 1.0;

  require(sos.max_pole_magnitude() < 1.0, ErrorCategory::NumericalDesign,
          "designed bandpass is unstable (pole on or outside the unit circle)");
  return sos;
}

std::vector<double> sos_filter(const SosCascade& sos, std::span<const double> x) {
  std::vector<double> y(x.begin(), x.end());
  for (const auto& s : sos.sections) {
    // direct form II transposed, zero initial state
    double z1 = 0.0, z2 = 0.0;
    for (double& v : y) {
      const double in = v;
      const double out = s.b0 * in + z1;
      z1 = s.b1 * in - s.a1 * out + z2;
      z2 = s.b2 * in - s.a2 * out;
      v = out;
    }
  }
  if (sos.gain != 1.0) {
    for (double& v : y) v *= sos.gain;
  }
  return y;
}

std::vector<double> zero_phase_filter(const SosCascade& sos, std::span<const double> x) {
  const std::size_t pad = 3 * std::size_t(sos.order());
  require(x.size() > pad, ErrorCategory::InvalidInput,
          "series too short for zero-phase filtering (need length > 3 * order)");
  const std::size_t n = x.size();

  // Odd reflection about both endpoints.
  std::vector<double> ext(n + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i) ext[i] = 2.0 * x[0] - x[pad - i];
  std::copy(x.begin(), x.end(), ext.begin() + pad);
  for (std::size_t i = 0; i < pad; ++i) ext[pad + n + i] = 2.0 * x[n - 1] - x[n - 2 - i];

  std::vector<double> fwd = sos_filter(sos, ext);
  std::reverse(fwd.begin(), fwd.end());
  std::vector<double> bwd = sos_filter(sos, fwd);
  std::reverse(bwd.begin(), bwd.end());

  return {bwd.begin() + long(pad), bwd.begin() + long(pad + n)};
}

std::vector<double> simulate_bandlimited(const BandLimited& spec, std::size_t len,
                                         RngStream& stream) {
  const SosCascade sos = butterworth_bandpass(spec.order, spec.f_lo, spec.f_hi);
  std::vector<double> white(len);
  for (double& v : white) v = stream.std_normal();
  return zero_phase_filter(sos, white);
}

}  // namespace noisebench
