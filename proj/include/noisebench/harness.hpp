#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "noisebench/dataset.hpp"
#include "noisebench/noise_spec.hpp"
#include "noisebench/parallel.hpp"
#include "noisebench/spectral.hpp"

namespace noisebench {

inline constexpr const char* kToolVersion = "0.1.0";

struct BenchmarkCase {
  std::string case_id;
  NoiseSpec spec;
  std::size_t train_size = 16384;
  std::size_t test_size = 4096;
  std::size_t series_len = 4096;
};

/// The built-in benchmark battery: 8 band-limited cases, 33 power-law cases,
/// 36 shot-noise cases, 12 Bernoulli-Gaussian cases, and 11 alpha-stable
/// cases (100 total).
std::vector<BenchmarkCase> builtin_suite();

struct BoxplotSummary {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  double whisker_lo = 0, whisker_hi = 0;  // 1.5 IQR rule
  std::size_t n = 0;
};

BoxplotSummary boxplot_summary(std::span<const double> values);

struct EvalReport {
  std::string case_id;
  std::string model;
  double geodesic_distance = 0.0;
  std::map<std::string, BoxplotSummary> target_params;
  std::map<std::string, BoxplotSummary> generated_params;
  std::map<std::string, std::vector<double>> target_samples;     // per-series estimates
  std::map<std::string, std::vector<double>> generated_samples;  // per-series estimates
  std::size_t target_failures = 0;
  std::size_t generated_failures = 0;
  PsdEstimate psd_target;
  PsdEstimate psd_generated;
  std::string tool_version = kToolVersion;
};

/// Per-series characteristic-parameter estimates for the spec's noise type;
/// failed series are skipped and counted.  Band-limited noise yields an
/// empty map.
std::map<std::string, std::vector<double>> estimate_dataset_params(
    const TimeSeriesDataset& ds, const NoiseSpec& spec, std::size_t& failures,
    Exec exec = Exec::Parallel);

/// Scores a generated dataset against a target: geodesic distance between
/// median multitaper PSDs plus parameter-recovery boxplots on both sides.
EvalReport evaluate(const TimeSeriesDataset& target, const TimeSeriesDataset& generated,
                    const NoiseSpec& spec, const MultitaperConfig& cfg = {},
                    Exec exec = Exec::Parallel, const std::string& case_id = "");

/// Serializes the report (stable key order) and writes plot-ready CSV files
/// (<stem>.psd.csv, <stem>.params.csv) next to it.
void write_report(const EvalReport& report, const std::filesystem::path& path);

struct SuiteOptions {
  std::filesystem::path outdir;
  double scale = 1.0;  // shrinks train/test sizes for desk-scale runs
  std::uint64_t master_seed = 42;
  MultitaperConfig mt;
  Exec exec = Exec::Parallel;
  bool verbose = true;
};

/// Generates train/test target datasets for every built-in case, runs the
/// target-vs-target baseline evaluation, and writes datasets, sidecars, and
/// reports under outdir.  Output is a pure function of (suite, seed, scale).
void run_suite(const SuiteOptions& opts);

}  // namespace noisebench
