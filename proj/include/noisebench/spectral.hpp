#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "noisebench/dataset.hpp"
#include "noisebench/dpss.hpp"
#include "noisebench/parallel.hpp"

namespace noisebench {

struct MultitaperConfig {
  double nw = 4.0;
  int k = 7;
  std::size_t nfft = 4096;
};

/// One-sided PSD on the uniform digital-frequency grid k / nfft, k = 0..nfft/2.
/// Normalized so that sum(values) * df equals the sample variance of a white
/// input (one-sided interior bins carry the factor 2).
struct PsdEstimate {
  std::vector<double> freqs;
  std::vector<double> values;
};

/// Eigenvalue-weighted Thomson multitaper estimate of one series.  Pass a
/// precomputed DpssSet (length = series length) to amortize the taper solve
/// across a dataset.
PsdEstimate multitaper_psd(std::span<const double> x, const MultitaperConfig& cfg,
                           const DpssSet* tapers = nullptr);

/// Per-frequency-bin median of per-series multitaper PSDs; the dataset-level
/// spectral signature used by the evaluator.
PsdEstimate median_psd(const TimeSeriesDataset& ds, const MultitaperConfig& cfg,
                       Exec exec = Exec::Parallel);

/// Scale-invariant geodesic PSD distance: the standard deviation of
/// ln(Pg/Pt) over the (identical) frequency grid.
double geodesic_distance(const PsdEstimate& generated, const PsdEstimate& target);

/// Least-squares slope of ln P versus ln f over [f_min, f_max]; needs at
/// least 8 bins in range.
double loglog_slope(const PsdEstimate& psd, double f_min, double f_max);

}  // namespace noisebench
