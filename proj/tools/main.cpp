#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "noisebench/dataset_io.hpp"
#include "noisebench/errors.hpp"
#include "noisebench/harness.hpp"
#include "noisebench/parallel.hpp"
#include "noisebench/simulate.hpp"
#include "noisebench/spectral.hpp"

namespace fs = std::filesystem;
using namespace noisebench;

namespace {

int exit_code_for(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::InvalidParameter: return 2;
    case ErrorCategory::InvalidInput: return 3;
    case ErrorCategory::DegenerateInput: return 4;
    case ErrorCategory::DegenerateFit: return 5;
    case ErrorCategory::NoConvergence: return 6;
    case ErrorCategory::EmbeddingFailure: return 7;
    case ErrorCategory::NumericalDesign: return 8;
    case ErrorCategory::Format: return 9;
    case ErrorCategory::CorruptFile: return 10;
    case ErrorCategory::Parse: return 11;
    case ErrorCategory::Io: return 12;
  }
  return 1;
}

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs) {
  std::map<std::string, std::string> params;
  for (const std::string& kv : kvs) {
    const auto eq = kv.find('=');
    require(eq != std::string::npos && eq > 0, ErrorCategory::InvalidParameter,
            "--param expects key=value, got: " + kv);
    params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return params;
}

TimeSeriesDataset load_dataset(const fs::path& path) {
  if (path.extension() == ".csv") return read_csv_dataset(path);
  return read_dataset(path);
}

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

int main(int argc, char** argv) {
  CLI::App app{"noisebench: classical noise simulation and spectral evaluation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  int threads = 0;
  app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

  auto* gen = app.add_subcommand("generate", "Simulate a target noise dataset");
  std::string g_model;
  std::vector<std::string> g_params;
  std::uint64_t g_num = 4096, g_seed = 42;
  std::uint64_t g_len = 4096;
  std::string g_out;
  gen->add_option("--model", g_model,
                  "bandlimited | fdwn | fgn | fbm | shot | bg | sas")->required();
  gen->add_option("--param", g_params, "model parameter key=value (repeatable)");
  gen->add_option("--num", g_num, "number of series");
  gen->add_option("--len", g_len, "series length");
  gen->add_option("--seed", g_seed, "master seed");
  gen->add_option("--out", g_out, "output .nbts path")->required();

  auto* ev = app.add_subcommand("evaluate", "Score a generated dataset against a target");
  std::string e_target, e_generated, e_report, e_model;
  std::vector<std::string> e_params;
  ev->add_option("--target", e_target, "target dataset (.nbts or .csv)")->required();
  ev->add_option("--generated", e_generated, "generated dataset (.nbts or .csv)")->required();
  ev->add_option("--report", e_report, "output report .json path")->required();
  ev->add_option("--model", e_model, "noise model override (default: target sidecar)");
  ev->add_option("--param", e_params, "model parameter key=value (with --model)");

  auto* est = app.add_subcommand("estimate", "Per-series parameter recovery for a dataset");
  std::string s_model, s_in;
  std::vector<std::string> s_params;
  est->add_option("--model", s_model, "noise model")->required();
  est->add_option("--param", s_params, "model parameter key=value (repeatable)");
  est->add_option("--in", s_in, "input dataset (.nbts or .csv)")->required();

  auto* psd = app.add_subcommand("psd", "Median multitaper PSD of a dataset");
  std::string p_in, p_out;
  double p_nw = 4.0;
  int p_k = 7;
  std::uint64_t p_nfft = 4096;
  psd->add_option("--in", p_in, "input dataset (.nbts or .csv)")->required();
  psd->add_option("--out", p_out, "output CSV path")->required();
  psd->add_option("--nw", p_nw, "time half-bandwidth");
  psd->add_option("--k", p_k, "taper count");
  psd->add_option("--nfft", p_nfft, "FFT length");

  auto* suite = app.add_subcommand("suite", "Built-in benchmark battery");
  bool list_only = false;
  bool run = false;
  std::string outdir;
  double scale = 1.0;
  std::uint64_t suite_seed = 42;
  suite->add_flag("--list", list_only, "list the benchmark cases");
  suite->add_flag("--run", run, "generate datasets and baseline reports");
  suite->add_option("--outdir", outdir, "output directory for --run");
  suite->add_option("--scale", scale, "dataset size multiplier for desk-scale runs");
  suite->add_option("--seed", suite_seed, "master seed");

  try {
    app.parse(argc, argv);
    set_threads(threads);

    if (gen->parsed()) {
      const NoiseSpec spec = make_spec(g_model, parse_params(g_params));
      const TimeSeriesDataset ds = simulate_dataset(spec, g_num, g_len, g_seed);
      write_dataset(ds, g_out);
      DatasetMeta meta;
      meta.spec = spec;
      meta.master_seed = g_seed;
      meta.provenance = std::string("noisebench generate ") + kToolVersion;
      meta.n_series = ds.n_series;
      meta.series_len = ds.series_len;
      write_meta(g_out, meta);
      std::cerr << "wrote " << g_out << " (" << ds.n_series << " x " << ds.series_len
                << ")\n";
    } else if (ev->parsed()) {
      const TimeSeriesDataset target = load_dataset(e_target);
      const TimeSeriesDataset generated = load_dataset(e_generated);
      NoiseSpec spec;
      if (!e_model.empty()) {
        spec = make_spec(e_model, parse_params(e_params));
      } else {
        const auto meta = read_meta(e_target);
        require(meta.has_value() && meta->spec.has_value(), ErrorCategory::InvalidInput,
                "target has no metadata sidecar; pass --model/--param explicitly");
        spec = *meta->spec;
      }
      const EvalReport rep = evaluate(target, generated, spec);
      write_report(rep, e_report);
      std::cout << "geodesic_distance " << rep.geodesic_distance << "\n";
    } else if (est->parsed()) {
      const NoiseSpec spec = make_spec(s_model, parse_params(s_params));
      const TimeSeriesDataset ds = load_dataset(s_in);
      std::size_t failures = 0;
      const auto samples = estimate_dataset_params(ds, spec, failures);
      nlohmann::ordered_json j;
      j["model"] = model_name(spec);
      j["n_series"] = ds.n_series;
      j["failures"] = failures;
      nlohmann::ordered_json params;
      for (const auto& [name, values] : samples) {
        params[name] = values.empty() ? nlohmann::ordered_json()
                                      : boxplot_json(boxplot_summary(values));
      }
      j["params"] = params;
      std::cout << j.dump(2) << "\n";
    } else if (psd->parsed()) {
      const TimeSeriesDataset ds = load_dataset(p_in);
      MultitaperConfig cfg{p_nw, p_k, p_nfft};
      const PsdEstimate med = median_psd(ds, cfg);
      std::ofstream out(p_out, std::ios::trunc);
      require(out.good(), ErrorCategory::Io, "cannot write " + p_out);
      out << "freq,psd\n";
      out.precision(17);
      for (std::size_t k = 0; k < med.freqs.size(); ++k) {
        out << med.freqs[k] << ',' << med.values[k] << "\n";
      }
    } else if (suite->parsed()) {
      if (list_only) {
        const auto cases = builtin_suite();
        std::cout << "case_id,model,train_size,test_size,series_len\n";
        for (const auto& c : cases) {
          std::cout << c.case_id << ',' << model_name(c.spec) << ',' << c.train_size << ','
                    << c.test_size << ',' << c.series_len << "\n";
        }
      } else if (run) {
        require(!outdir.empty(), ErrorCategory::InvalidParameter,
                "suite --run needs --outdir");
        SuiteOptions opts;
        opts.outdir = outdir;
        opts.scale = scale;
        opts.master_seed = suite_seed;
        run_suite(opts);
      } else {
        fail(ErrorCategory::InvalidParameter, "suite needs --list or --run");
      }
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    nlohmann::ordered_json j;
    j["error"] = category_name(e.category());
    j["message"] = e.message();
    std::cerr << j.dump() << "\n";
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    std::cerr << R"({"error":"internal","message":")" << e.what() << "\"}\n";
    return 1;
  }
}
