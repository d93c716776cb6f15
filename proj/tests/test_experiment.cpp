#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "opdyn/error.hpp"
#include "opdyn/experiment.hpp"
#include "opdyn/fixture.hpp"

using namespace opdyn;
namespace fs = std::filesystem;

namespace {

RunConfig fixture_config(double f) {
  RunConfig c;
  c.edges = fixture::kEdges;
  c.n = fixture::kAgents;
  c.alpha = fixture::kAlpha;
  c.x0 = fixture::kX0;
  c.r = fixture::kR;
  c.f = {f};
  return c;
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("opdyn_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Matrix read_matrix_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string cell;
    rows.emplace_back();
    while (std::getline(ss, cell, ',')) rows.back().push_back(std::stod(cell));
  }
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("run on the reference configuration") {
  const auto rep = run(fixture_config(0.5));
  const auto printed = {std::pair{&rep.weights.one_step, fixture::printed_w()},
                        std::pair{&rep.weights.two_step, fixture::printed_w_prime()},
                        std::pair{&rep.pressure.b, fixture::printed_b()}};
  for (const auto& [computed, expected] : printed)
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j)
        CHECK(std::abs((*computed)(i, j) - expected(i, j)) <= fixture::kPrintedTolerance);
  REQUIRE(rep.trajectory);
  CHECK(rep.trajectory->converged);
  CHECK(*rep.consensus.agreement < 1e-6);
}

TEST_CASE("run with full pressure") {
  const auto rep = run(fixture_config(1.0));
  CHECK(*rep.trajectory->convergence_time == 1);
  CHECK(*rep.consensus.simulated_value == doctest::Approx(0.466667).epsilon(1e-6));
}

TEST_CASE("run: two mutually trusting agents already agreeing") {
  RunConfig c;
  c.edges = {{1, 2}, {2, 1}};
  c.alpha = {0.4};
  c.x0 = {0.3, 0.3};
  c.f = {0.2};
  const auto rep = run(c);
  CHECK(*rep.trajectory->convergence_time == 0);
  CHECK(average_opinion(rep.trajectory->final_state()) == doctest::Approx(0.3));
  CHECK(rep.params.alpha == std::vector<double>{0.4, 0.4});
}

TEST_CASE("analyze mode skips the trajectory") {
  const auto rep = run(fixture_config(0.5), RunMode::Analyze);
  CHECK_FALSE(rep.trajectory);
  CHECK(rep.consensus.predicted_value);
  CHECK_FALSE(rep.consensus.agreement);
}

TEST_CASE("config validation names the offending field") {
  auto c = fixture_config(0.5);
  SUBCASE("alpha") {
    c.alpha[0] = 1.0;
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("alpha"), ParameterError);
  }
  SUBCASE("f") {
    c.f = {-0.2};
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("f ="), ParameterError);
  }
  SUBCASE("r") {
    c.r = 1.2;
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("r ="), ParameterError);
  }
  SUBCASE("x0 length") {
    c.x0.pop_back();
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("x0"), ParameterError);
  }
  SUBCASE("random without seed") {
    c.x0.clear();
    c.x0_random = true;
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("seed"), ParameterError);
  }
  SUBCASE("multiple points in run") {
    c.f = {0.1, 0.2};
    CHECK_THROWS_AS(run(c), ParameterError);
  }
  SUBCASE("no graph source") {
    c.edges.clear();
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("network"), ParameterError);
  }
  SUBCASE("graph with a silent agent names it") {
    c.edges = {{1, 2}, {2, 1}};
    c.n = 3;
    c.alpha = {0.5};
    c.x0 = {0.1, 0.2, 0.3};
    CHECK_THROWS_WITH_AS(run(c), doctest::Contains("agent 3"), ValidationError);
  }
}

TEST_CASE("seeded random inputs are reproducible") {
  RunConfig c;
  c.edges = fixture::kEdges;
  c.alpha_random = true;
  c.x0_random = true;
  c.seed = 42;
  const auto a = resolve(c);
  const auto b = resolve(c);
  CHECK(a.alpha == b.alpha);
  CHECK(a.x0 == b.x0);
  for (double v : a.alpha) CHECK((v > 0.0 && v < 1.0));
  c.seed = 43;
  CHECK(resolve(c).x0 != a.x0);
}

TEST_CASE("config json round trip and file loading") {
  const auto dir = scratch_dir("config");
  fs::create_directories(dir);
  {
    std::ofstream net(dir / "net.txt");
    net << "# reference network\n";
    for (auto [a, b] : fixture::kEdges) net << a << ' ' << b << '\n';
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"network": "net.txt", "alpha": [0.32,0.63,0.1,0.84,0.76,0.55],
              "x0": [0.14,0.8,0.4,0.9,0.2,0.36], "f": [0.2, 0.4], "r": 0.8,
              "eps": 1e-6, "eps_time": 1e-4, "max_steps": 500})";
  }
  const auto c = load_config(dir / "cfg.json");
  CHECK(*c.network_path == (dir / "net.txt").string());
  CHECK(c.f == std::vector<double>{0.2, 0.4});
  CHECK(c.eps_consensus == 1e-6);
  CHECK(*c.eps_time == 1e-4);
  CHECK(c.max_steps == 500);
  const auto again = config_from_json(to_json(c));
  CHECK(to_json(again) == to_json(c));

  const auto reports = sweep(c);
  REQUIRE(reports.size() == 2);
  CHECK(*comparison_time(reports[0]) >= *comparison_time(reports[1]));

  std::ofstream(dir / "bad.json") << R"({"alpha": "lots"})";
  CHECK_THROWS_AS(load_config(dir / "bad.json"), InputError);
  std::ofstream(dir / "broken.json") << "{";
  CHECK_THROWS_AS(load_config(dir / "broken.json"), InputError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), InputError);
}

TEST_CASE("single-point sweep equals run") {
  const auto c = fixture_config(0.4);
  const auto single = run(c);
  const auto swept = sweep(c);
  REQUIRE(swept.size() == 1);
  CHECK(report_to_json(swept[0]) == report_to_json(single));
}

TEST_CASE("sweeps order points alpha-major and share x(0)") {
  auto c = fixture_config(0.3);
  c.f = {0.1, 0.6};
  c.alpha_sweep = {0.2, 0.7};
  const auto reports = sweep(c);
  REQUIRE(reports.size() == 4);
  CHECK(reports[1].params.alpha.front() == 0.2);
  CHECK(reports[1].params.f == 0.6);
  CHECK(reports[2].params.alpha.front() == 0.7);
  CHECK(reports[2].params.f == 0.1);
  for (const auto& r : reports) CHECK(r.x0 == fixture::kX0);
}

TEST_CASE("exports: determinism, replay and lossless matrices") {
  const auto dir_a = scratch_dir("export_a");
  const auto dir_b = scratch_dir("export_b");
  auto c = fixture_config(0.5);
  c.eps_time = 1e-4;
  c.output_dir = dir_a.string();
  run(c);
  c.output_dir = dir_b.string();
  run(c);

  for (const char* name : {"W.csv", "Wprime.csv", "B_f0.5.csv", "trajectory.csv",
                           "report.json", "config.json"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(dir_a / name));
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }

  // Replaying the emitted config reproduces the report.
  const auto replay_dir = scratch_dir("export_replay");
  auto replay = load_config(dir_a / "config.json");
  replay.output_dir = replay_dir.string();
  run(replay);
  CHECK(slurp(replay_dir / "report.json") == slurp(dir_a / "report.json"));

  const auto rep = run(fixture_config(0.5));
  for (const auto& [file, m] : {std::pair{"W.csv", &rep.weights.one_step},
                                std::pair{"Wprime.csv", &rep.weights.two_step},
                                std::pair{"B_f0.5.csv", &rep.pressure.b}}) {
    const auto read = read_matrix_csv(dir_a / file);
    CHECK(read == *m);  // 17 significant digits round-trip exactly
    CHECK(max_row_sum_error(read) <= 1e-9);
  }

  const auto trajectory = slurp(dir_a / "trajectory.csv");
  CHECK(trajectory.rfind("t,x1,x2,x3,x4,x5,x6\n0,", 0) == 0);

  const auto report = json::parse(slurp(dir_a / "report.json"));
  CHECK(report["consensus"]["regime"] == "partial-pressure");
  CHECK(report["generator"] == kGeneratorDescription);
  CHECK(report["trajectory"]["timing"]["eps"] == 1e-4);
  CHECK(report["config"]["f"] == 0.5);
}

TEST_CASE("pressure matrix file names") {
  CHECK(pressure_matrix_filename(0.5) == "B_f0.5.csv");
  CHECK(pressure_matrix_filename(0.0) == "B_f0.csv");
  CHECK(pressure_matrix_filename(0.999) == "B_f0.999.csv");
}

TEST_CASE("reproduce_paper writes a comparison against the printed matrices") {
  const auto dir = scratch_dir("paper");
  const auto rep = reproduce_paper(dir.string());
  REQUIRE(rep.comparisons.size() == 3);
  for (const auto& mc : rep.comparisons) CHECK(mc.max_delta <= fixture::kPrintedTolerance);
  CHECK(rep.pressure_vs_none.size() == 2);
  CHECK(rep.pressure_sweep.size() == 6);
  CHECK(rep.confidence_sweep.size() == 4);
  CHECK(*comparison_time(rep.pressure_vs_none[1]) <
        *comparison_time(rep.pressure_vs_none[0]));
  for (const auto* group : {&rep.pressure_vs_none, &rep.pressure_sweep, &rep.confidence_sweep})
    for (const auto& r : *group) CHECK(*r.consensus.agreement < 1e-6);

  CHECK(fs::exists(dir / "matrix_comparison.csv"));
  CHECK(fs::exists(dir / "pressure_sweep" / "sweep_summary.csv"));
  CHECK(fs::exists(dir / "confidence_sweep" / "point_003" / "trajectory.csv"));
  const auto summary = json::parse(slurp(dir / "reproduction.json"));
  CHECK(summary["matrices"]["Wprime"]["within_tolerance"] == true);
}
