#include "noisebench/rng.hpp"

#include <cmath>
#include <numbers>

#include "noisebench/errors.hpp"

namespace noisebench {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master ^ mix64(index + 0x632be59bd9b4e019ULL));
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed), stream_index_(stream_index) {
  // Seed the xoshiro state from a splitmix64 chain keyed on both inputs.
  std::uint64_t s = mix_seed(master_seed, stream_index);
  for (auto& w : state_) {
    s += 0x9e3779b97f4a7c15ULL;
    w = mix64(s);
  }
  // All-zero state is unreachable from mix64 output in practice; guard anyway.
  if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) state_[0] = 1;
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform_co() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_oc() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::uniform_oo() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::std_normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method: exact, two variates per accepted pair.
  double u, v, s;
  do {
    u = 2.0 * uniform_co() - 1.0;
    v = 2.0 * uniform_co() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * m;
  has_spare_normal_ = true;
  return u * m;
}

double RngStream::exponential(double beta) {
  require(beta > 0.0, ErrorCategory::InvalidParameter, "exponential mean must be > 0");
  return -beta * std::log(uniform_oc());
}

long long RngStream::poisson(double lam) {
  require(lam >= 0.0, ErrorCategory::InvalidParameter, "poisson mean must be >= 0");
  if (lam == 0.0) return 0;
  if (lam < 10.0) {
    // Knuth product-of-uniforms inversion.
    const double limit = std::exp(-lam);
    long long k = 0;
    double prod = uniform_oc();
    while (prod > limit) {
      ++k;
      prod *= uniform_oc();
    }
    return k;
  }
  // PTRS transformed rejection (Hoermann 1993); exact for lam >= 10.
  const double b = 0.931 + 2.53 * std::sqrt(lam);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_lam = std::log(lam);
  for (;;) {
    double u = uniform_oo() - 0.5;
    double v = uniform_oo();
    double us = 0.5 - std::abs(u);
    double kf = std::floor((2.0 * a / us + b) * u + lam + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_lam - lam - std::lgamma(k + 1.0)) {
      return static_cast<long long>(kf);
    }
  }
}

double RngStream::sas_standard(double alpha) {
  require(alpha > 0.0 && alpha <= 2.0, ErrorCategory::InvalidParameter,
          "sas alpha must be in (0, 2]");
  const double phi = std::numbers::pi * (uniform_oo() - 0.5);
  if (std::abs(alpha - 1.0) < 1e-12) return std::tan(phi);
  const double w = -std::log(uniform_oc());
  const double t1 = std::sin(alpha * phi) / std::pow(std::cos(phi), 1.0 / alpha);
  const double t2 = std::pow(std::cos((1.0 - alpha) * phi) / w, (1.0 - alpha) / alpha);
  return t1 * t2;
}

}  // namespace noisebench
