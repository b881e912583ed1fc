// Benchmark comparing the serial reference kernels against the OpenMP
// parallel path.  Both paths must produce identical bytes; this target
// reports throughput and verifies the equality on every row.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "noisebench/harness.hpp"
#include "noisebench/parallel.hpp"
#include "noisebench/simulate.hpp"
#include "noisebench/spectral.hpp"

using namespace noisebench;
using clock_type = std::chrono::steady_clock;

namespace {

double time_of(const std::function<void()>& fn) {
  const auto t0 = clock_type::now();
  fn();
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

struct Row {
  std::string name;
  double serial_s;
  double parallel_s;
  bool identical;
};

}  // namespace

int main(int argc, char** argv) {
  // default sizes keep the run under a minute on a laptop core
  std::size_t n_series = 256;
  std::size_t len = 2048;
  if (argc > 1) n_series = std::size_t(std::stoul(argv[1]));
  if (argc > 2) len = std::size_t(std::stoul(argv[2]));

  std::printf("noisebench kernel benchmark: %zu series x %zu samples, %d thread(s)\n\n",
              n_series, len, max_threads());

  std::vector<Row> rows;
  const std::vector<std::pair<std::string, NoiseSpec>> gens = {
      {"generate fgn H=0.8", Fgn{0.8, 1.0}},
      {"generate fdwn d=0.3", Fdwn{0.3, 1.0}},
      {"generate shot (1-sided exp)", Shot{1.0, 1.0, 1.0, 0.1, PulseShape::OneSidedExponential}},
      {"generate bandlimited", BandLimited{0.1, 0.15, 40}},
      {"generate sas a=1.2", Sas{1.2, 1.0, 0.0}},
  };
  for (const auto& [name, spec] : gens) {
    TimeSeriesDataset serial_ds, parallel_ds;
    const double ts = time_of([&] { serial_ds = simulate_dataset(spec, n_series, len, 42, Exec::Serial); });
    const double tp = time_of([&] { parallel_ds = simulate_dataset(spec, n_series, len, 42, Exec::Parallel); });
    rows.push_back({name, ts, tp, serial_ds.data == parallel_ds.data});
  }

  {
    const auto ds = simulate_dataset(Fgn{0.8, 1.0}, n_series, len, 42);
    const MultitaperConfig cfg{4.0, 7, len};
    PsdEstimate a, b;
    const double ts = time_of([&] { a = median_psd(ds, cfg, Exec::Serial); });
    const double tp = time_of([&] { b = median_psd(ds, cfg, Exec::Parallel); });
    rows.push_back({"median multitaper psd", ts, tp, a.values == b.values});
  }
  {
    const auto target = simulate_dataset(Bg{0.1, 0.1, 1.0}, n_series, len, 1);
    const auto gen = simulate_dataset(Bg{0.1, 0.1, 1.0}, n_series, len, 2);
    const MultitaperConfig cfg{4.0, 7, len};
    EvalReport a, b;
    const double ts = time_of([&] { a = evaluate(target, gen, Bg{0.1, 0.1, 1.0}, cfg, Exec::Serial); });
    const double tp = time_of([&] { b = evaluate(target, gen, Bg{0.1, 0.1, 1.0}, cfg, Exec::Parallel); });
    rows.push_back({"evaluate (bg, EM + psd)", ts, tp,
                    a.geodesic_distance == b.geodesic_distance &&
                        a.target_samples == b.target_samples});
  }

  std::printf("%-30s %12s %12s %9s %6s\n", "kernel", "serial [s]", "openmp [s]", "speedup",
              "equal");
  bool all_equal = true;
  for (const Row& r : rows) {
    std::printf("%-30s %12.3f %12.3f %8.2fx %6s\n", r.name.c_str(), r.serial_s, r.parallel_s,
                r.serial_s / r.parallel_s, r.identical ? "yes" : "NO");
    all_equal = all_equal && r.identical;
  }
  if (!all_equal) {
    std::printf("\nERROR: parallel output differs from the serial reference\n");
    return 1;
  }
  return 0;
}
