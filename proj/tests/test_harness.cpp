#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "noisebench/harness.hpp"
#include "noisebench/errors.hpp"
#include "noisebench/rng.hpp"
#include "noisebench/simulate.hpp"
#include "test_oracles.hpp"

using namespace noisebench;
namespace fs = std::filesystem;

TEST_SUITE("harness") {

TEST_CASE("builtin suite composition") {
  const auto cases = builtin_suite();
  CHECK(cases.size() == 100);
  std::set<std::string> ids;
  std::size_t n_band = 0, n_fdwn = 0, n_fgn = 0, n_fbm = 0, n_shot = 0, n_bg = 0, n_sas = 0;
  bool has_fbm_08 = false, has_shot_gauss_3 = false;
  for (const auto& c : cases) {
    ids.insert(c.case_id);
    CHECK_NOTHROW(validate(c.spec));
    CHECK(c.train_size == 16384);
    CHECK(c.test_size == 4096);
    CHECK(c.series_len == 4096);
    const std::string m = model_name(c.spec);
    if (m == "bandlimited") ++n_band;
    if (m == "fdwn") ++n_fdwn;
    if (m == "fgn") ++n_fgn;
    if (m == "fbm") ++n_fbm;
    if (m == "shot") ++n_shot;
    if (m == "bg") ++n_bg;
    if (m == "sas") ++n_sas;
    if (const auto* f = std::get_if<Fbm>(&c.spec)) {
      if (f->H == 0.8) has_fbm_08 = true;
    }
    if (const auto* s = std::get_if<Shot>(&c.spec)) {
      if (s->pulse == PulseShape::Gaussian && s->nu == 3.0) has_shot_gauss_3 = true;
    }
  }
  CHECK(ids.size() == 100);  // unique case ids
  CHECK(n_band == 8);
  CHECK(n_fdwn == 11);
  CHECK(n_fgn == 11);
  CHECK(n_fbm == 11);
  CHECK(n_shot == 36);
  CHECK(n_bg == 12);
  CHECK(n_sas == 11);
  CHECK(has_fbm_08);
  CHECK(has_shot_gauss_3);
}

TEST_CASE("boxplot summary basics") {
  const std::vector<double> v = {1, 2, 3, 4, 5};
  const BoxplotSummary s = boxplot_summary(v);
  CHECK(s.q1 == 2.0);
  CHECK(s.median == 3.0);
  CHECK(s.q3 == 4.0);
  CHECK(s.min == 1.0);
  CHECK(s.max == 5.0);
  CHECK(s.whisker_lo == 1.0);
  CHECK(s.whisker_hi == 5.0);
  CHECK(s.n == 5);

  const std::vector<double> flat(7, 3.3);
  const BoxplotSummary f = boxplot_summary(flat);
  CHECK(f.min == 3.3);
  CHECK(f.q1 == 3.3);
  CHECK(f.median == 3.3);
  CHECK(f.q3 == 3.3);
  CHECK(f.max == 3.3);
  CHECK(f.whisker_lo == 3.3);
  CHECK(f.whisker_hi == 3.3);

  CHECK_THROWS_AS((void)boxplot_summary(std::vector<double>{}), Error);
}

TEST_CASE("boxplot on normal draws pins the quartiles") {
  RngStream s(91, 0);
  std::vector<double> x(1000000);
  for (double& v : x) v = s.std_normal();
  const BoxplotSummary b = boxplot_summary(x);
  CHECK(std::abs(b.q1 + 0.6745) < 0.01);
  CHECK(std::abs(b.q3 - 0.6745) < 0.01);
  // outliers exist at n = 1e6, so whiskers sit inside the extremes
  CHECK(b.min < b.whisker_lo);
  CHECK(b.whisker_hi < b.max);
}

TEST_CASE("boxplot ordering invariant on random data") {
  RngStream s(92, 0);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> x(101);
    for (double& v : x) v = s.sas_standard(1.2);
    const BoxplotSummary b = boxplot_summary(x);
    CHECK(b.min <= b.whisker_lo);
    CHECK(b.whisker_lo <= b.q1);
    CHECK(b.q1 <= b.median);
    CHECK(b.median <= b.q3);
    CHECK(b.q3 <= b.whisker_hi);
    CHECK(b.whisker_hi <= b.max);
  }

  // interpolated q1 falls inside the data gap; the whisker must be capped
  const std::vector<double> gap = {0, 0, 10, 10, 10, 10, 10, 10};
  const BoxplotSummary g = boxplot_summary(gap);
  CHECK(g.q1 == doctest::Approx(7.5));
  CHECK(g.whisker_lo <= g.q1);
  CHECK(g.min <= g.whisker_lo);
}

TEST_CASE("self-evaluation yields zero distance and equal summaries") {
  auto ds = simulate_dataset(Fgn{0.8, 1.0}, 48, 512, 1001);
  const MultitaperConfig cfg{4.0, 7, 512};
  const EvalReport rep = evaluate(ds, ds, Fgn{0.8, 1.0}, cfg, Exec::Parallel, "self");
  CHECK(rep.geodesic_distance == 0.0);
  REQUIRE(rep.target_params.count("H") == 1);
  REQUIRE(rep.generated_params.count("H") == 1);
  CHECK(rep.target_params.at("H").median == rep.generated_params.at("H").median);
  CHECK(rep.target_failures == 0);
  CHECK(rep.generated_failures == 0);
}

TEST_CASE("evaluate validates series length") {
  auto a = simulate_dataset(Fgn{0.5, 1.0}, 4, 256, 1);
  auto b = simulate_dataset(Fgn{0.5, 1.0}, 4, 512, 1);
  CHECK_THROWS_AS((void)evaluate(a, b, Fgn{0.5, 1.0}), Error);
}

TEST_CASE("evaluate separates different Hurst indices") {
  const MultitaperConfig cfg{4.0, 7, 1024};
  auto target = simulate_dataset(Fgn{0.8, 1.0}, 256, 1024, 2001);
  auto same = simulate_dataset(Fgn{0.8, 1.0}, 256, 1024, 2002);
  auto off = simulate_dataset(Fgn{0.6, 1.0}, 256, 1024, 2003);
  const EvalReport floor_rep = evaluate(target, same, Fgn{0.8, 1.0}, cfg);
  const EvalReport off_rep = evaluate(target, off, Fgn{0.8, 1.0}, cfg);
  CHECK(off_rep.geodesic_distance > 5.0 * floor_rep.geodesic_distance);
  CHECK(std::abs(off_rep.generated_params.at("H").median -
                 off_rep.target_params.at("H").median) > 0.15);
}

TEST_CASE("report files are deterministic") {
  const fs::path dir = fs::temp_directory_path() / "nbts_report_test";
  fs::create_directories(dir);
  auto target = simulate_dataset(Bg{0.1, 0.1, 1.0}, 16, 1024, 3001);
  auto gen = simulate_dataset(Bg{0.1, 0.1, 1.0}, 16, 1024, 3002);
  const MultitaperConfig cfg{4.0, 7, 1024};
  const EvalReport rep = evaluate(target, gen, Bg{0.1, 0.1, 1.0}, cfg, Exec::Parallel, "case");

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  write_report(rep, dir / "r1.json");
  write_report(rep, dir / "r2.json");
  std::string a = slurp(dir / "r1.json"), b = slurp(dir / "r2.json");
  // stems differ inside the json (csv references), normalize them out
  for (std::string* s : {&a, &b}) {
    std::size_t pos;
    while ((pos = s->find("r1.")) != std::string::npos) s->replace(pos, 3, "rX.");
    while ((pos = s->find("r2.")) != std::string::npos) s->replace(pos, 3, "rX.");
  }
  CHECK(a == b);
  CHECK(slurp(dir / "r1.psd.csv") == slurp(dir / "r2.psd.csv"));
  CHECK(slurp(dir / "r1.params.csv") == slurp(dir / "r2.params.csv"));
  CHECK(!slurp(dir / "r1.psd.csv").empty());
  fs::remove_all(dir);
}

}  // TEST_SUITE
