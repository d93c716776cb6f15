#include <cmath>
#include <random>

#include "doctest.h"
#include "opdyn/error.hpp"
#include "opdyn/fixture.hpp"
#include "opdyn/influence.hpp"
#include "oracles.hpp"

using namespace opdyn;

namespace {

AgentParams fixture_params(double f = fixture::kBaselineF) {
  return {fixture::kAlpha, f, fixture::kR};
}

double row_sum(const Matrix& m, std::size_t i) {
  double s = 0;
  for (double v : m.row(i)) s += v;
  return s;
}

}  // namespace

TEST_CASE("influence indices on the reference network") {
  const auto g = fixture::graph();
  const auto prof = influence_profile(g, fixture_params());
  // (alpha + in/(n-1) + out/(n-1)) / 3 from the trust table degrees.
  const std::vector<double> inf = {(0.32 + 0.2 + 0.4) / 3, (0.63 + 0.2 + 0.4) / 3,
                                   (0.1 + 0.4 + 0.2) / 3,  (0.84 + 0.2 + 0.2) / 3,
                                   (0.76 + 0.2 + 0.2) / 3, (0.55 + 0.4 + 0.2) / 3};
  for (std::size_t i = 0; i < 6; ++i) CHECK(prof.inf[i] == doctest::Approx(inf[i]).epsilon(1e-14));
  CHECK(prof.inf[1] == doctest::Approx(0.41).epsilon(1e-14));
  CHECK(prof.beta[2] == doctest::Approx(0.4));
  CHECK(prof.gamma[0] == doctest::Approx(0.4));

  // Agent 1: direct {2,4}, indirect {3,5} with in-degrees (2,1).
  const double total1 = inf[1] + inf[3] + inf[2] * (2.0 / 3) + inf[4] * (1.0 / 3);
  CHECK(prof.total_inf[0] == doctest::Approx(total1).epsilon(1e-14));
  // Agent 3 has no indirect neighbors: direct sum only.
  CHECK(prof.total_inf[2] == doctest::Approx(inf[5]).epsilon(1e-14));
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(prof.inf[i] > 0.0);
    CHECK(prof.inf[i] < 1.0);
    CHECK(prof.con[i] * prof.total_inf[i] ==
          doctest::Approx(1 - fixture::kAlpha[i]).epsilon(1e-14));
  }
}

TEST_CASE("one-step weights reproduce printed entries") {
  const auto g = fixture::graph();
  const auto p = fixture_params();
  const auto w = one_step_weights(influence_profile(g, p), g, p);
  CHECK(std::abs(w(0, 1) - 0.3386) <= fixture::kPrintedTolerance);
  CHECK(std::abs(w(0, 3) - 0.3414) <= fixture::kPrintedTolerance);
  // Sole direct neighbor takes all of 1 - alpha_3.
  CHECK(w(2, 5) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(w(3, 4) == doctest::Approx(1 - 0.84).epsilon(1e-15));
}

TEST_CASE("two-step weights reproduce printed entries") {
  const auto w = build_weight_model(fixture::graph(), fixture_params());
  CHECK(std::abs(w.two_step(0, 1) - 0.2691) <= fixture::kPrintedTolerance);
  CHECK(std::abs(w.two_step(0, 2) - 0.0764) <= fixture::kPrintedTolerance);
  CHECK(std::abs(w.two_step(0, 4) - 0.0633) <= fixture::kPrintedTolerance);
  // Rows 3 and 6 have no indirect neighbors and a single direct one.
  for (std::size_t i : {2u, 5u})
    for (std::size_t j = 0; j < 6; ++j)
      CHECK(w.two_step(i, j) == doctest::Approx(w.one_step(i, j)).epsilon(1e-14));
  CHECK(w.two_step(2, 5) == doctest::Approx(0.9));
}

TEST_CASE("single direct neighbor without indirect ones: W' row equals W row for any r") {
  // 1 <-> 2, 3 -> 1: agent 2 trusts only 1, and 1's only contact is 2.
  const auto g = graph_from_one_based(
      std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}, {2, 1}, {3, 1}});
  for (double r : {0.1, 0.5, 0.9, 1.0}) {
    const auto w = build_weight_model(g, AgentParams{{0.3, 0.6, 0.2}, 0.0, r});
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(w.two_step(1, j) == doctest::Approx(w.one_step(1, j)).epsilon(1e-14));
      CHECK(w.two_step(0, j) == doctest::Approx(w.one_step(0, j)).epsilon(1e-14));
    }
  }
}

TEST_CASE("parameter validation") {
  const auto g = fixture::graph();
  auto p = fixture_params();
  SUBCASE("alpha at the open-interval boundary") {
    p.alpha[3] = 1.0;
    CHECK_THROWS_WITH_AS(build_weight_model(g, p), doctest::Contains("alpha[4]"),
                         ParameterError);
    p.alpha[3] = 0.0;
    CHECK_THROWS_AS(build_weight_model(g, p), ParameterError);
  }
  SUBCASE("alpha length") {
    p.alpha.pop_back();
    CHECK_THROWS_AS(build_weight_model(g, p), ParameterError);
  }
  SUBCASE("f and r ranges") {
    p.f = 1.5;
    CHECK_THROWS_WITH_AS(build_weight_model(g, p), doctest::Contains("f ="), ParameterError);
    p.f = 0.5;
    p.r = 0.0;
    CHECK_THROWS_WITH_AS(build_weight_model(g, p), doctest::Contains("r ="), ParameterError);
  }
}

TEST_CASE("weight properties on random instances") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  std::uniform_real_distribution<double> density(0.1, 0.7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = size(gen);
    const auto g = oracle::random_graph(gen, n, density(gen));
    const auto sets = neighbor_sets(g);
    const auto alpha = oracle::random_vector(gen, n, 0.01, 0.99);
    std::vector<double> indirect_mass;
    for (double r : {0.1, 0.5, 1.0}) {
      const AgentParams p{alpha, 0.0, r};
      const auto w = build_weight_model(g, p);
      const auto ref = oracle::reference_weights(oracle::edge_set(g), n, alpha, r);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(row_sum(w.one_step, i) - 1) <= 1e-12);
        CHECK(std::abs(row_sum(w.two_step, i) - 1) <= 1e-12);
        CHECK(w.one_step(i, i) == alpha[i]);
        CHECK(w.two_step(i, i) == alpha[i]);
        double mass = 0;
        for (std::size_t j = 0; j < n; ++j) {
          CHECK(w.two_step(i, j) >= 0.0);
          CHECK(std::abs(w.one_step(i, j) - ref.w(i, j)) <= 1e-12);
          CHECK(std::abs(w.two_step(i, j) - ref.w2(i, j)) <= 1e-12);
          const bool reachable_in_two = i == j || g.trusts(i, j) ||
              std::binary_search(sets.indirect[i].begin(), sets.indirect[i].end(), j);
          if (!reachable_in_two) CHECK(w.two_step(i, j) == 0.0);
          if (g.trusts(i, j)) {
            const double blend = r * w.profile.con[i] * w.profile.inf[j] +
                                 (1 - r) * w.one_step(i, j);
            CHECK(std::abs(w.two_step(i, j) - blend) <= 1e-12);
            if (r == 1.0)
              CHECK(w.two_step(i, j) ==
                    doctest::Approx(w.profile.con[i] * w.profile.inf[j]).epsilon(1e-14));
          }
        }
        for (AgentId s : sets.indirect[i]) mass += w.two_step(i, s);
        indirect_mass.push_back(mass);
      }
    }
    // Mass on indirect neighbors is nondecreasing in r.
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(indirect_mass[i] <= indirect_mass[n + i] + 1e-15);
      CHECK(indirect_mass[n + i] <= indirect_mass[2 * n + i] + 1e-15);
    }
  }
}
