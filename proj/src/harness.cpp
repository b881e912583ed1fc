#include "noisebench/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "noisebench/dataset_io.hpp"
#include "noisebench/errors.hpp"
#include "noisebench/estimators.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/simulate.hpp"

namespace noisebench {

namespace {

// 0.25 -> "0p25", -0.45 -> "m0p45"; keeps case ids filesystem-friendly.
std::string format_value(double v) {
  std::ostringstream os;
  os << v;
  std::string s = os.str();
  for (char& c : s) {
    if (c == '.') c = 'p';
    if (c == '-') c = 'm';
  }
  return s;
}

}  // namespace

std::vector<BenchmarkCase> builtin_suite() {
  std::vector<BenchmarkCase> cases;
  cases.reserve(100);

  // Eight bandpass filters: width 0.05, centers 0.05 .. 0.40.
  for (int i = 0; i < 8; ++i) {
    BandLimited spec{0.025 + 0.05 * i, 0.075 + 0.05 * i, 40};
    cases.push_back({"bandlimited_band" + std::to_string(i), spec});
  }

  // Power-law grid H = 0.05, 0.1, 0.2, ..., 0.9, 0.95 (d = H - 0.5).
  const std::vector<double> hurst = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                     0.6,  0.7, 0.8, 0.9, 0.95};
  for (double h : hurst) {
    cases.push_back({"fdwn_d" + format_value(h - 0.5), Fdwn{h - 0.5, 1.0}});
  }
  for (double h : hurst) {
    cases.push_back({"fgn_H" + format_value(h), Fgn{h, 1.0}});
  }
  for (double h : hurst) {
    cases.push_back({"fbm_H" + format_value(h), Fbm{h, 1.0}});
  }

  // Shot noise: three pulse types, twelve event rates.
  const PulseShape pulses[] = {PulseShape::OneSidedExponential, PulseShape::LinearExponential,
                               PulseShape::Gaussian};
  for (PulseShape pulse : pulses) {
    for (int i = 1; i <= 12; ++i) {
      const double nu = 0.25 * i;
      cases.push_back({std::string("shot_") + pulse_name(pulse) + "_nu" + format_value(nu),
                       Shot{nu, 1.0, 1.0, 0.1, pulse}});
    }
  }

  // Bernoulli-Gaussian impulse probabilities.
  for (double p : {0.01, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    cases.push_back({"bg_p" + format_value(p), Bg{p, 0.1, 1.0}});
  }

  // Standard symmetric alpha-stable exponents.
  for (double a : {0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.4, 1.5}) {
    cases.push_back({"sas_alpha" + format_value(a), Sas{a, 1.0, 0.0}});
  }

  return cases;
}

BoxplotSummary boxplot_summary(std::span<const double> values) {
  require(!values.empty(), ErrorCategory::InvalidInput, "boxplot of empty sample");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const auto quantile = [&](double p) {
    const double pos = p * double(v.size() - 1);
    const std::size_t lo = std::size_t(std::floor(pos));
    const double frac = pos - double(lo);
    return (lo + 1 < v.size()) ? v[lo] * (1.0 - frac) + v[lo + 1] * frac : v[lo];
  };
  BoxplotSummary s;
  s.n = v.size();
  s.min = v.front();
  s.max = v.back();
  s.q1 = quantile(0.25);
  s.median = quantile(0.5);
  s.q3 = quantile(0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_lo = *std::lower_bound(v.begin(), v.end(), lo_fence);
  s.whisker_hi = *(std::prev(std::upper_bound(v.begin(), v.end(), hi_fence)));
  // Interpolated quartiles can fall inside a data gap; cap the whiskers at
  // the box so the ordering min <= whisker_lo <= q1 <= ... always holds.
  s.whisker_lo = std::min(s.whisker_lo, s.q1);
  s.whisker_hi = std::max(s.whisker_hi, s.q3);
  return s;
}

std::map<std::string, std::vector<double>> estimate_dataset_params(
    const TimeSeriesDataset& ds, const NoiseSpec& spec, std::size_t& failures, Exec exec) {
  require(!ds.empty(), ErrorCategory::InvalidInput, "empty dataset");

  // Parameter names for this noise type, in report order.
  std::vector<std::string> names;
  if (std::holds_alternative<Fdwn>(spec)) names = {"d"};
  else if (std::holds_alternative<Fgn>(spec) || std::holds_alternative<Fbm>(spec)) names = {"H"};
  else if (std::holds_alternative<Shot>(spec)) names = {"nu"};
  else if (std::holds_alternative<Bg>(spec)) names = {"p", "theta"};
  else if (std::holds_alternative<Sas>(spec)) names = {"alpha", "gamma"};

  failures = 0;
  std::map<std::string, std::vector<double>> out;
  if (names.empty()) return out;  // band-limited: PSD-only evaluation

  const std::size_t n_params = names.size();
  std::vector<double> table(ds.n_series * n_params,
                            std::numeric_limits<double>::quiet_NaN());
  for_each_index(ds.n_series, exec, [&](std::size_t i) {
    double* row = table.data() + i * n_params;
    try {
      const std::span<const double> x = ds.series(i);
      if (const auto* s = std::get_if<Fdwn>(&spec)) {
        (void)s;
        row[0] = fdwn_d_whittle(x);
      } else if (std::holds_alternative<Fgn>(spec)) {
        row[0] = hurst_discrete_variations(x, HurstKind::Fgn);
      } else if (std::holds_alternative<Fbm>(spec)) {
        row[0] = hurst_discrete_variations(x, HurstKind::Fbm);
      } else if (const auto* s2 = std::get_if<Shot>(&spec)) {
        row[0] = shot_event_rate(x, s2->pulse, s2->sigma_d);
      } else if (std::holds_alternative<Bg>(spec)) {
        const BgFit fit = bg_fit_em(x);
        row[0] = fit.p_hat;
        row[1] = fit.theta_hat;
      } else if (std::holds_alternative<Sas>(spec)) {
        const SasFit fit = sas_fit_logmoments(x);
        row[0] = fit.alpha_hat;
        row[1] = fit.gamma_hat;
      }
    } catch (const Error&) {
      // skip-and-count policy: heavy-tailed single series can defeat a fit
    }
  });

  for (std::size_t p = 0; p < n_params; ++p) out[names[p]] = {};
  std::size_t failed = 0;
  for (std::size_t i = 0; i < ds.n_series; ++i) {
    const double* row = table.data() + i * n_params;
    if (std::isnan(row[0])) {
      ++failed;
      continue;
    }
    for (std::size_t p = 0; p < n_params; ++p) out[names[p]].push_back(row[p]);
  }
  failures = failed;
  return out;
}

EvalReport evaluate(const TimeSeriesDataset& target, const TimeSeriesDataset& generated,
                    const NoiseSpec& spec, const MultitaperConfig& cfg, Exec exec,
                    const std::string& case_id) {
  require(!target.empty() && !generated.empty(), ErrorCategory::InvalidInput,
          "evaluate needs nonempty datasets");
  require(target.series_len == generated.series_len, ErrorCategory::InvalidInput,
          "series lengths differ between target and generated datasets");
  validate(spec);

  EvalReport rep;
  rep.case_id = case_id.empty() ? model_name(spec) : case_id;
  rep.model = model_name(spec);
  rep.psd_target = median_psd(target, cfg, exec);
  rep.psd_generated = median_psd(generated, cfg, exec);
  rep.geodesic_distance = geodesic_distance(rep.psd_generated, rep.psd_target);

  rep.target_samples = estimate_dataset_params(target, spec, rep.target_failures, exec);
  rep.generated_samples =
      estimate_dataset_params(generated, spec, rep.generated_failures, exec);
  for (const auto& [name, samples] : rep.target_samples) {
    if (!samples.empty()) rep.target_params[name] = boxplot_summary(samples);
  }
  for (const auto& [name, samples] : rep.generated_samples) {
    if (!samples.empty()) rep.generated_params[name] = boxplot_summary(samples);
  }
  return rep;
}

namespace {

nlohmann::ordered_json boxplot_json(const BoxplotSummary& s) {
  nlohmann::ordered_json j;
  j["n"] = s.n;
  j["min"] = s.min;
  j["whisker_lo"] = s.whisker_lo;
  j["q1"] = s.q1;
  j["median"] = s.median;
  j["q3"] = s.q3;
  j["whisker_hi"] = s.whisker_hi;
  j["max"] = s.max;
  return j;
}

}  // namespace

void write_report(const EvalReport& rep, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["schema"] = "nbts-report/1";
  j["tool_version"] = rep.tool_version;
  j["case_id"] = rep.case_id;
  j["model"] = rep.model;
  j["geodesic_distance"] = rep.geodesic_distance;
  j["target_failures"] = rep.target_failures;
  j["generated_failures"] = rep.generated_failures;
  nlohmann::ordered_json tp, gp;
  for (const auto& [name, s] : rep.target_params) tp[name] = boxplot_json(s);
  for (const auto& [name, s] : rep.generated_params) gp[name] = boxplot_json(s);
  j["target_params"] = tp;
  j["generated_params"] = gp;
  j["psd_csv"] = path.stem().string() + ".psd.csv";
  j["params_csv"] = path.stem().string() + ".params.csv";

  std::ofstream out(path, std::ios::trunc);
  require(out.good(), ErrorCategory::Io, "cannot write report: " + path.string());
  out << j.dump(2) << "\n";

  // PSD curves, plot-ready.
  std::filesystem::path psd_path = path;
  psd_path.replace_extension(".psd.csv");
  std::ofstream psd(psd_path, std::ios::trunc);
  require(psd.good(), ErrorCategory::Io, "cannot write PSD csv");
  psd << "freq,psd_target,psd_generated\n";
  psd.precision(17);
  for (std::size_t k = 0; k < rep.psd_target.freqs.size(); ++k) {
    psd << rep.psd_target.freqs[k] << ',' << rep.psd_target.values[k] << ','
        << rep.psd_generated.values[k] << "\n";
  }

  // Per-series parameter estimates in long format.
  std::filesystem::path par_path = path;
  par_path.replace_extension(".params.csv");
  std::ofstream par(par_path, std::ios::trunc);
  require(par.good(), ErrorCategory::Io, "cannot write params csv");
  par << "dataset,param,value\n";
  par.precision(17);
  for (const auto& [name, samples] : rep.target_samples) {
    for (double v : samples) par << "target," << name << ',' << v << "\n";
  }
  for (const auto& [name, samples] : rep.generated_samples) {
    for (double v : samples) par << "generated," << name << ',' << v << "\n";
  }
}

void run_suite(const SuiteOptions& opts) {
  namespace fs = std::filesystem;
  require(!opts.outdir.empty(), ErrorCategory::InvalidParameter, "suite outdir required");
  require(opts.scale > 0.0 && opts.scale <= 1.0, ErrorCategory::InvalidParameter,
          "scale must be in (0, 1]");
  fs::create_directories(opts.outdir);

  const std::vector<BenchmarkCase> cases = builtin_suite();
  nlohmann::ordered_json summary;
  summary["schema"] = "nbts-suite/1";
  summary["tool_version"] = kToolVersion;
  summary["master_seed"] = opts.master_seed;
  summary["scale"] = opts.scale;
  summary["n_cases"] = cases.size();
  nlohmann::ordered_json case_list = nlohmann::ordered_json::array();

  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const BenchmarkCase& c = cases[ci];
    const auto scaled = [&](std::size_t n) {
      return std::max<std::size_t>(1, std::size_t(std::llround(double(n) * opts.scale)));
    };
    const std::size_t train_n = scaled(c.train_size);
    const std::size_t test_n = scaled(c.test_size);

    const std::uint64_t case_seed = mix_seed(opts.master_seed, ci);
    const std::uint64_t train_seed = mix_seed(case_seed, 1);
    const std::uint64_t test_seed = mix_seed(case_seed, 2);
    const std::uint64_t baseline_seed = mix_seed(case_seed, 3);

    if (opts.verbose) {
      std::cerr << "[suite] " << (ci + 1) << "/" << cases.size() << " " << c.case_id
                << " (train " << train_n << ", test " << test_n << ")\n";
    }

    const TimeSeriesDataset train =
        simulate_dataset(c.spec, train_n, c.series_len, train_seed, opts.exec);
    const TimeSeriesDataset test =
        simulate_dataset(c.spec, test_n, c.series_len, test_seed, opts.exec);

    const fs::path train_path = opts.outdir / (c.case_id + "_train.nbts");
    const fs::path test_path = opts.outdir / (c.case_id + "_test.nbts");
    write_dataset(train, train_path);
    write_dataset(test, test_path);
    DatasetMeta meta;
    meta.spec = c.spec;
    meta.provenance = std::string("noisebench suite ") + kToolVersion;
    meta.series_len = c.series_len;
    meta.master_seed = train_seed;
    meta.n_series = train_n;
    write_meta(train_path, meta);
    meta.master_seed = test_seed;
    meta.n_series = test_n;
    write_meta(test_path, meta);

    // Target-vs-target baseline: an independent target draw is scored
    // against the test set, giving the sampling-noise floor of the distance
    // and the reference boxplots for the parameter estimators.
    const TimeSeriesDataset baseline =
        simulate_dataset(c.spec, test_n, c.series_len, baseline_seed, opts.exec);
    MultitaperConfig mt = opts.mt;
    EvalReport rep = evaluate(test, baseline, c.spec, mt, opts.exec, c.case_id);
    const fs::path report_path = opts.outdir / (c.case_id + "_report.json");
    write_report(rep, report_path);

    nlohmann::ordered_json row;
    row["case_id"] = c.case_id;
    row["model"] = model_name(c.spec);
    row["train"] = train_path.filename().string();
    row["test"] = test_path.filename().string();
    row["report"] = report_path.filename().string();
    row["baseline_geodesic_distance"] = rep.geodesic_distance;
    case_list.push_back(row);
  }
  summary["cases"] = case_list;

  std::ofstream out(opts.outdir / "suite_summary.json", std::ios::trunc);
  require(out.good(), ErrorCategory::Io, "cannot write suite summary");
  out << summary.dump(2) << "\n";
}

}  // namespace noisebench
