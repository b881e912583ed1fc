#include "noisebench/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "noisebench/errors.hpp"
#include "noisebench/fft.hpp"

namespace noisebench {

PsdEstimate multitaper_psd(std::span<const double> x, const MultitaperConfig& cfg,
                           const DpssSet* tapers) {
  const std::size_t n = x.size();
  require(n > 0, ErrorCategory::InvalidInput, "empty series");
  require(n <= cfg.nfft, ErrorCategory::InvalidInput, "series longer than nfft");

  DpssSet local;
  if (tapers == nullptr) {
    local = dpss(n, cfg.nw, cfg.k);
    tapers = &local;
  }
  require(tapers->n == n && int(tapers->tapers.size()) >= cfg.k,
          ErrorCategory::InvalidInput, "taper set does not match series length");

  bool all_zero = true;
  for (double v : x) {
    if (v != 0.0) {
      all_zero = false;
      break;
    }
  }
  require(!all_zero, ErrorCategory::DegenerateInput, "zero input has no PSD");

  const std::size_t nbins = cfg.nfft / 2 + 1;
  std::vector<double> acc(nbins, 0.0);
  std::vector<double> padded(cfg.nfft, 0.0);
  std::vector<std::complex<double>> spec(nbins);
  double weight_sum = 0.0;
  for (int j = 0; j < cfg.k; ++j) {
    const double lambda = tapers->eigenvalues[j];
    const std::vector<double>& v = tapers->tapers[j];
    for (std::size_t t = 0; t < n; ++t) padded[t] = v[t] * x[t];
    std::fill(padded.begin() + long(n), padded.end(), 0.0);
    fft::rfft(padded, spec);
    for (std::size_t kbin = 0; kbin < nbins; ++kbin) {
      acc[kbin] += lambda * std::norm(spec[kbin]);
    }
    weight_sum += lambda;
  }

  PsdEstimate out;
  out.freqs.resize(nbins);
  out.values.resize(nbins);
  const bool even = (cfg.nfft % 2 == 0);
  for (std::size_t kbin = 0; kbin < nbins; ++kbin) {
    out.freqs[kbin] = double(kbin) / double(cfg.nfft);
    const bool interior = kbin != 0 && !(even && kbin == nbins - 1);
    out.values[kbin] = (interior ? 2.0 : 1.0) * acc[kbin] / weight_sum;
  }
  return out;
}

PsdEstimate median_psd(const TimeSeriesDataset& ds, const MultitaperConfig& cfg, Exec exec) {
  require(!ds.empty(), ErrorCategory::InvalidInput, "empty dataset");
  const DpssSet tapers = dpss(ds.series_len, cfg.nw, cfg.k);
  const std::size_t nbins = cfg.nfft / 2 + 1;

  std::vector<double> all(ds.n_series * nbins);
  for_each_index(ds.n_series, exec, [&](std::size_t i) {
    PsdEstimate p = multitaper_psd(ds.series(i), cfg, &tapers);
    std::copy(p.values.begin(), p.values.end(), all.begin() + long(i * nbins));
  });

  PsdEstimate out;
  out.freqs.resize(nbins);
  out.values.resize(nbins);
  std::vector<double> column(ds.n_series);
  for (std::size_t kbin = 0; kbin < nbins; ++kbin) {
    out.freqs[kbin] = double(kbin) / double(cfg.nfft);
    for (std::size_t i = 0; i < ds.n_series; ++i) column[i] = all[i * nbins + kbin];
    const std::size_t mid = ds.n_series / 2;
    std::nth_element(column.begin(), column.begin() + long(mid), column.end());
    double med = column[mid];
    if (ds.n_series % 2 == 0) {
      const double lower = *std::max_element(column.begin(), column.begin() + long(mid));
      med = 0.5 * (med + lower);
    }
    out.values[kbin] = med;
  }
  return out;
}

double geodesic_distance(const PsdEstimate& generated, const PsdEstimate& target) {
  const std::size_t n = target.freqs.size();
  require(generated.freqs.size() == n && n > 0, ErrorCategory::InvalidInput,
          "PSD frequency grids differ in size");
  for (std::size_t k = 0; k < n; ++k) {
    require(generated.freqs[k] == target.freqs[k], ErrorCategory::InvalidInput,
            "PSD frequency grids differ");
  }
  std::vector<double> r(n);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    require(generated.values[k] > 0.0 && target.values[k] > 0.0, ErrorCategory::InvalidInput,
            "PSD values must be positive for the geodesic distance");
    r[k] = std::log(generated.values[k] / target.values[k]);
    sum += r[k];
  }
  // sqrt(mean(r^2) - mean(r)^2), computed two-pass: the naive moment form
  // cancels catastrophically when the spectra differ by a large constant.
  const double mean = sum / double(n);
  double var = 0.0;
  for (std::size_t k = 0; k < n; ++k) var += (r[k] - mean) * (r[k] - mean);
  var /= double(n);
  return std::sqrt(std::max(var, 0.0));
}

double loglog_slope(const PsdEstimate& psd, double f_min, double f_max) {
  require(f_min > 0.0 && f_min < f_max && f_max <= 0.5, ErrorCategory::InvalidInput,
          "slope band must satisfy 0 < f_min < f_max <= 0.5");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  for (std::size_t k = 0; k < psd.freqs.size(); ++k) {
    const double f = psd.freqs[k];
    if (f < f_min || f > f_max) continue;
    require(psd.values[k] > 0.0, ErrorCategory::InvalidInput,
            "nonpositive PSD value in slope band");
    const double lx = std::log(f);
    const double ly = std::log(psd.values[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  require(m >= 8, ErrorCategory::InvalidInput, "need at least 8 bins in the slope band");
  const double dm = double(m);
  return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

}  // namespace noisebench
