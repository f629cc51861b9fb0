#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gen.hpp"
#include "infprop/dynamics.hpp"

using namespace infprop;

TEST_CASE("dynamics: penalties are -log(rho) with exact neutral zero") {
  PriorMatrix pm(2, 2);
  pm.set(0, 1, std::exp(-0.5));
  pm.set(0, 2, 0.0);
  PenaltySource src(pm);
  CHECK(src.penalty(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(src.penalty(0, 2) == kInf);
  CHECK(src.penalty(1, 1) == 0.0);  // untouched rho = 1: exactly free
  CHECK(src.penalty(1, 2) == 0.0);
}

TEST_CASE("dynamics: prior matrix rejects out-of-range rho") {
  PriorMatrix pm(1, 1);
  CHECK_THROWS(pm.set(0, 1, -0.1));
  CHECK_THROWS(pm.set(0, 1, 1.5));
  pm.set(0, 1, 1.0);
  CHECK(pm.all_ones());
  pm.set(0, 1, 0.5);
  CHECK_FALSE(pm.all_ones());
}

TEST_CASE("dynamics: unit-delay model mixes {1, inf} with frequency p") {
  DirectedGraph g = default_params(build_graph(2, {{0, 1, 1.0}}), 0.3);
  DelayModel model = DelayModel::ic_unit();
  Rng rng(5);
  int finite = 0;
  const int trials = 20000;
  for (int i = 0; i < trials; ++i) {
    double d = sample_delay(model, g, 0, rng);
    REQUIRE((d == 1.0 || d == kInf));
    finite += (d == 1.0);
  }
  CHECK(std::abs(finite / double(trials) - 0.3) < 0.02);
}

TEST_CASE("dynamics: exponential-delay model matches rate and scale readings") {
  DirectedGraph g = default_params(build_graph(2, {{0, 1, 1.0}}), 1.0);
  g.theta[0] = 2.0;

  Rng rng(6);
  DelayModel rate_model = DelayModel::ctic(false);  // theta = rate, mean 1/2
  double sum = 0.0;
  const int trials = 40000;
  for (int i = 0; i < trials; ++i) {
    double d = sample_delay(rate_model, g, 0, rng);
    REQUIRE(d > 0.0);
    REQUIRE(d < kInf);
    sum += d;
  }
  CHECK(std::abs(sum / trials - 0.5) < 0.02);

  DelayModel scale_model = DelayModel::ctic(true);  // theta = scale, mean 2
  sum = 0.0;
  for (int i = 0; i < trials; ++i) sum += sample_delay(scale_model, g, 0, rng);
  CHECK(std::abs(sum / trials - 2.0) < 0.08);
}

TEST_CASE("dynamics: replay returns the table verbatim and consumes no randomness") {
  DirectedGraph g = default_params(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 0.5);
  DelayModel model = DelayModel::replay({0.125, kInf});
  Rng rng(7);
  uint64_t before = Rng(7).next_u64();
  CHECK(sample_delay(model, g, 0, rng) == 0.125);
  CHECK(sample_delay(model, g, 1, rng) == kInf);
  CHECK(rng.next_u64() == before);  // untouched stream
}

TEST_CASE("dynamics: replay table covers every edge in edge-id order") {
  Rng rng(8);
  gen::RandomGraph rg = gen::random_graph(rng, 8, 16);
  DirectedGraph g = gen::with_random_p(rg, rng);
  Rng draw(9);
  std::vector<double> table = make_replay_table(DelayModel::ic_unit(), g, draw);
  REQUIRE(int(table.size()) == g.m);
  Rng draw2(9);
  std::vector<double> again = make_replay_table(DelayModel::ic_unit(), g, draw2);
  CHECK(table == again);
  for (double d : table) CHECK((d == 1.0 || d == kInf));
}

TEST_CASE("dynamics: linear-threshold choice picks at most one in-edge") {
  DirectedGraph g = build_graph(3, {{0, 2, 0.6}, {1, 2, 0.3}});
  LTGraph lt(g);
  Rng rng(10);
  int from0 = 0, from1 = 0, none = 0;
  const int trials = 30000;
  for (int i = 0; i < trials; ++i) {
    std::vector<int32_t> choice = sample_lt_active_set(lt, rng);
    CHECK(choice[0] == -1);  // no in-edges
    CHECK(choice[1] == -1);
    if (choice[2] == -1) {
      ++none;
    } else {
      NodeId src = g.in_src[g.in_off[2] + choice[2]];
      (src == 0 ? from0 : from1) += 1;
    }
  }
  CHECK(std::abs(from0 / double(trials) - 0.6) < 0.02);
  CHECK(std::abs(from1 / double(trials) - 0.3) < 0.02);
  CHECK(std::abs(none / double(trials) - 0.1) < 0.02);
}

TEST_CASE("dynamics: penalized in-edge distribution keeps mass 1 and ratios") {
  DirectedGraph g = build_graph(4, {{0, 3, 0.5}, {1, 3, 0.25}, {2, 3, 0.125}});
  LTGraph lt(g);

  // Penalize the first in-edge of node 3 by 0.5.
  std::vector<double> dist = lt_penalized_distribution(lt, 3, 0, 0.5);
  REQUIRE(dist.size() == 4);  // 3 in-edges + residual
  CHECK(dist[0] == doctest::Approx(0.25));
  double total = std::accumulate(dist.begin(), dist.end(), 0.0);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  // Unpenalized entries keep their ratio (0.25 : 0.125 = 2).
  CHECK(dist[1] / dist[2] == doctest::Approx(2.0));
  // Residual participates in the renormalization.
  CHECK(dist[3] > 0.125);

  // scale = 1 changes nothing.
  std::vector<double> same = lt_penalized_distribution(lt, 3, 0, 1.0);
  CHECK(same[0] == 0.5);
  CHECK(same[1] == 0.25);
  CHECK(same[3] == doctest::Approx(0.125));
}
