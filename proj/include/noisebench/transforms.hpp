#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noisebench/dataset.hpp"

namespace noisebench {

/// Inverse standard normal CDF (Wichura AS241, |error| < 1e-15).
double normal_inverse_cdf(double p);
/// Standard normal CDF via erfc.
double normal_cdf(double z);

/// Per-feature affine map onto [-1, 1]; constant features map to 0.
class MinMaxScaler {
 public:
  static MinMaxScaler fit(const double* data, std::size_t n_rows, std::size_t n_features);
  static MinMaxScaler fit(const TimeSeriesDataset& ds);

  double apply_one(std::size_t feature, double x) const;
  double invert_one(std::size_t feature, double y) const;
  TimeSeriesDataset apply(const TimeSeriesDataset& ds) const;
  TimeSeriesDataset invert(const TimeSeriesDataset& ds) const;

  std::size_t n_features() const noexcept { return mins_.size(); }
  double feature_min(std::size_t f) const { return mins_.at(f); }
  double feature_max(std::size_t f) const { return maxs_.at(f); }

 private:
  std::vector<double> mins_, maxs_;
};

/// Monotone empirical-quantile-to-standard-normal map with exact inverse on
/// its range.  Inputs beyond the fitted extreme quantiles are clipped to them
/// before mapping.
class QuantileMap {
 public:
  /// Fits n_q empirical quantiles at probabilities (j + 1/2) / n_q over the
  /// pooled sample (needs at least n_q values).
  static QuantileMap fit(std::span<const double> pooled, int n_q = 1024);
  /// Pools every sample of one channel of a dataset.
  static QuantileMap fit(const TimeSeriesDataset& ds, int n_q = 1024,
                         std::size_t channel = 0);

  double apply(double x) const;
  double invert(double y) const;
  void apply(std::span<const double> in, std::span<double> out) const;
  void invert(std::span<const double> in, std::span<double> out) const;

  int n_quantiles() const noexcept { return int(quantiles_.size()); }
  const std::vector<double>& quantiles() const noexcept { return quantiles_; }

  /// JSON form for handing the fitted map to external trainers.
  std::string to_json() const;
  static QuantileMap from_json(const std::string& text);

 private:
  std::vector<double> quantiles_;  // non-decreasing
  std::vector<double> probs_;      // (j + 1/2) / n_q
};

/// Hann-window STFT configuration; hop = win_len * (1 - overlap) must divide
/// evenly and satisfy the constant-overlap-add condition.
struct StftConfig {
  std::size_t win_len = 128;
  double overlap = 0.5;

  std::size_t hop() const;
};

/// Two real channels (real, imaginary) of the one-sided STFT,
/// freq_bins x frames each, stored row-major by frequency.
struct StftArray {
  std::size_t freq_bins = 0;
  std::size_t frames = 0;
  std::size_t signal_len = 0;
  std::vector<double> re, im;

  double& real_at(std::size_t bin, std::size_t frame) { return re[bin * frames + frame]; }
  double& imag_at(std::size_t bin, std::size_t frame) { return im[bin * frames + frame]; }
  double real_at(std::size_t bin, std::size_t frame) const { return re[bin * frames + frame]; }
  double imag_at(std::size_t bin, std::size_t frame) const { return im[bin * frames + frame]; }
};

/// Centered STFT: the signal is extended by win_len/2 zeros on each side, so
/// a length-L signal with hop | L yields exactly L/hop + 1 frames.
StftArray stft(std::span<const double> x, const StftConfig& cfg);

/// Weighted overlap-add inverse; exact reconstruction of the original signal.
std::vector<double> istft(const StftArray& s, const StftConfig& cfg);

}  // namespace noisebench
