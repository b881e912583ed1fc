#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noisebench/errors.hpp"

namespace noisebench {

/// Dense n_series x channels x series_len matrix of doubles; the exchange
/// unit between generators and the evaluator.  Simulated noise is single
/// channel; multi-channel exists for interop (e.g. STFT real/imag pairs).
struct TimeSeriesDataset {
  std::size_t n_series = 0;
  std::size_t series_len = 0;
  std::size_t channels = 1;
  std::vector<double> data;  // layout: [series][channel][time]

  TimeSeriesDataset() = default;
  TimeSeriesDataset(std::size_t n, std::size_t len, std::size_t ch = 1)
      : n_series(n), series_len(len), channels(ch), data(n * len * ch, 0.0) {}

  std::span<double> series(std::size_t i, std::size_t ch = 0) {
    check_index(i, ch);
    return {data.data() + (i * channels + ch) * series_len, series_len};
  }
  std::span<const double> series(std::size_t i, std::size_t ch = 0) const {
    check_index(i, ch);
    return {data.data() + (i * channels + ch) * series_len, series_len};
  }

  bool empty() const noexcept { return n_series == 0 || series_len == 0; }

 private:
  void check_index(std::size_t i, std::size_t ch) const {
    require(i < n_series && ch < channels, ErrorCategory::InvalidInput,
            "series index out of range");
  }
};

}  // namespace noisebench
