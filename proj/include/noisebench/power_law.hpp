#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noisebench/noise_spec.hpp"
#include "noisebench/rng.hpp"

namespace noisebench {

/// FGN autocovariance (sigma^2/2)(|k-1|^2H + |k+1|^2H - 2|k|^2H).
double fgn_autocovariance(double H, double sigma_y2, long k);

/// FDWN autocovariance: gamma(0) = sigma^2 Gamma(1-2d)/Gamma(1-d)^2,
/// gamma(k) = gamma(k-1) (k-1+d)/(k-d).
double fdwn_autocovariance(double d, double sigma_eps2, long k);
std::vector<double> fdwn_autocovariance_seq(double d, double sigma_eps2, std::size_t n_lags);

/// Exact stationary Gaussian sampler via circulant embedding of the FGN
/// autocovariance.  The embedding size is the next power of two >= 2*len;
/// a negative circulant eigenvalue below -1e-8 * max is an embedding failure.
class FgnSampler {
 public:
  FgnSampler(double H, double sigma_y2, std::size_t len);

  void sample(RngStream& stream, std::span<double> out) const;
  std::size_t len() const noexcept { return len_; }
  std::size_t embed_size() const noexcept { return embed_size_; }

 private:
  std::size_t len_;
  std::size_t embed_size_;
  std::vector<double> scale_;  // sqrt(lambda_k / M)
};

/// Exact stationary Gaussian sampler for FDWN via the Durbin-Levinson
/// recursion (innovation form).  The coefficient table is precomputed once
/// per (d, len); sampling is O(len^2) per series and thread-safe.
class FdwnSampler {
 public:
  FdwnSampler(double d, double sigma_eps2, std::size_t len);

  void sample(RngStream& stream, std::span<double> out) const;
  std::size_t len() const noexcept { return len_; }

 private:
  std::size_t len_;
  std::vector<double> phi_;        // packed rows: row n (n = 1..len-1) has n entries
  std::vector<std::size_t> row_;   // offset of row n in phi_
  std::vector<double> innov_sd_;   // sqrt(v_n), n = 0..len-1
};

std::vector<double> simulate_fgn(const Fgn& spec, std::size_t len, RngStream& stream);
std::vector<double> simulate_fbm(const Fbm& spec, std::size_t len, RngStream& stream);
std::vector<double> simulate_fdwn(const Fdwn& spec, std::size_t len, RngStream& stream);

}  // namespace noisebench
