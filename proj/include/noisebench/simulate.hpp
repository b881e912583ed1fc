#pragma once

#include <cstdint>
#include <memory>

#include "noisebench/dataset.hpp"
#include "noisebench/noise_spec.hpp"
#include "noisebench/parallel.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

/// Reusable per-spec sampler.  Construction does any one-time work (filter
/// design, covariance embedding, Durbin-Levinson table); sample() is const
/// and safe to call concurrently with independent streams.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual void sample(RngStream& stream, std::span<double> out) const = 0;
};

std::unique_ptr<Sampler> make_sampler(const NoiseSpec& spec, std::size_t len);

/// Single series, series length len, from the given stream.
std::vector<double> simulate(const NoiseSpec& spec, std::size_t len, RngStream& stream);

/// Dataset of n_series independent series; series i is generated from
/// derive_stream(master_seed, i), so output is reproducible, independent of
/// scheduling, and prefix-stable when n_series grows.
TimeSeriesDataset simulate_dataset(const NoiseSpec& spec, std::size_t n_series,
                                   std::size_t len, std::uint64_t master_seed,
                                   Exec exec = Exec::Parallel);

}  // namespace noisebench
