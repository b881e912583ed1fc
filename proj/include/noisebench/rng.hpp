#pragma once

#include <cstdint>
#include <array>

namespace noisebench {

/// Avalanche mixer (splitmix64 finalizer); used for seed derivation trees.
std::uint64_t mix64(std::uint64_t x);

/// Combines a master seed with a sub-index into a new 64-bit seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

/// Deterministic per-series random stream (xoshiro256++ core).
///
/// Streams derived from the same (master_seed, stream_index) always produce
/// the same sequence; distinct indices give statistically independent
/// sequences.  A stream is a value type: copy it to fork the sequence, never
/// share one instance across threads.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const noexcept { return master_seed_; }
  std::uint64_t stream_index() const noexcept { return stream_index_; }

  std::uint64_t next_u64();

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform_co();
  /// Uniform on (0, 1]; safe to pass to log().
  double uniform_oc();
  /// Uniform on the open interval (0, 1).
  double uniform_oo();

  /// Exact standard normal variate (Marsaglia polar method).
  double std_normal();

  /// Exponential variate with mean beta > 0.
  double exponential(double beta);

  /// Exact Poisson variate; inversion for small means, PTRS rejection for
  /// large means (exact for the full benchmark range, lambda up to ~1e4).
  long long poisson(double lam);

  /// Standard symmetric alpha-stable variate, characteristic function
  /// exp(-|u|^alpha), via the Chambers-Mallows-Stuck transform.
  /// alpha = 1 branches to tan(phi) (Cauchy) to avoid the CMS singularity.
  double sas_standard(double alpha);

 private:
  std::array<std::uint64_t, 4> state_;
  std::uint64_t master_seed_ = 0;
  std::uint64_t stream_index_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_normal_ = false;
};

/// Free-function form of stream derivation.
inline RngStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
  return RngStream(master_seed, stream_index);
}

}  // namespace noisebench
