#include <doctest.h>

#include "noisebench/harness.hpp"
#include "noisebench/parallel.hpp"
#include "noisebench/simulate.hpp"
#include "noisebench/spectral.hpp"

using namespace noisebench;

// The OpenMP kernels must reproduce the serial reference bit for bit; thread
// count is forced above 1 so the parallel path really runs multithreaded.

TEST_SUITE("parallel") {

TEST_CASE("dataset generation: serial and parallel are bitwise identical") {
  set_threads(4);
  const std::vector<NoiseSpec> specs = {
      BandLimited{0.1, 0.15, 40},
      Fdwn{0.3, 1.0},
      Fgn{0.8, 1.0},
      Fbm{0.2, 1.0},
      Shot{1.0, 1.0, 1.0, 0.1, PulseShape::LinearExponential},
      Bg{0.1, 0.1, 1.0},
      Sas{1.2, 1.0, 0.0},
  };
  for (const NoiseSpec& spec : specs) {
    const auto serial = simulate_dataset(spec, 24, 512, 777, Exec::Serial);
    const auto parallel = simulate_dataset(spec, 24, 512, 777, Exec::Parallel);
    CHECK(serial.data == parallel.data);
  }
}

TEST_CASE("median psd: serial and parallel are bitwise identical") {
  set_threads(4);
  auto ds = simulate_dataset(Fgn{0.7, 1.0}, 33, 512, 99);
  const MultitaperConfig cfg{4.0, 7, 512};
  const PsdEstimate a = median_psd(ds, cfg, Exec::Serial);
  const PsdEstimate b = median_psd(ds, cfg, Exec::Parallel);
  CHECK(a.values == b.values);
  CHECK(a.freqs == b.freqs);
}

TEST_CASE("evaluation reports are execution-mode independent") {
  set_threads(4);
  auto target = simulate_dataset(Bg{0.2, 0.1, 1.0}, 24, 1024, 401);
  auto gen = simulate_dataset(Bg{0.2, 0.1, 1.0}, 24, 1024, 402);
  const MultitaperConfig cfg{4.0, 7, 1024};
  const EvalReport a = evaluate(target, gen, Bg{0.2, 0.1, 1.0}, cfg, Exec::Serial);
  const EvalReport b = evaluate(target, gen, Bg{0.2, 0.1, 1.0}, cfg, Exec::Parallel);
  CHECK(a.geodesic_distance == b.geodesic_distance);
  CHECK(a.target_params.at("p").median == b.target_params.at("p").median);
  CHECK(a.target_params.at("theta").median == b.target_params.at("theta").median);
  CHECK(a.generated_params.at("p").median == b.generated_params.at("p").median);
  CHECK(a.target_samples.at("p") == b.target_samples.at("p"));
}

TEST_CASE("exceptions propagate out of the parallel region") {
  set_threads(4);
  CHECK_THROWS(for_each_index(16, Exec::Parallel, [](std::size_t i) {
    if (i == 7) throw std::runtime_error("boom");
  }));
}

}  // TEST_SUITE
