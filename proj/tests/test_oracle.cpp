#include <doctest.h>

#include <cmath>

#include "gen.hpp"
#include "infprop/oracle.hpp"

using namespace infprop;

// All frozen constants below are dyadic rationals computed by independent
// enumeration before this module was written; comparisons are exact.

TEST_CASE("oracle: worked three-node chain") {
  DirectedGraph g = default_params(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 0.5);
  SeedSet seeds({{0, 1}}, 1);
  ExactSolution sol = exact_infector_and_bias(g, seeds);

  CHECK(sol.f.at(0, 1) == 1.0);
  CHECK(sol.f.at(1, 0) == 0.5);
  CHECK(sol.f.at(1, 1) == 0.5);
  CHECK(sol.f.at(2, 0) == 0.75);
  CHECK(sol.f.at(2, 1) == 0.25);

  // Row 2 of the expected infector matrix: self with 1/4, node 1 with 3/4...
  CHECK(sol.tbar[2 * 3 + 0] == 0.0);
  CHECK(sol.tbar[2 * 3 + 1] == 0.25);
  CHECK(sol.tbar[2 * 3 + 2] == 0.75);
  // ...seed row is pure self-loop.
  CHECK(sol.tbar[0 * 3 + 0] == 1.0);

  CHECK(sol.b[2 * 2 + 0] == 0.0625);
  CHECK(sol.b[2 * 2 + 1] == -0.0625);

  CHECK(laplacian_residual(sol.f, sol.tbar, sol.b) <= 1e-12);
  CHECK(exact_f(g, seeds).p == sol.f.p);
}

TEST_CASE("oracle: tie mass follows infector chains, not seed counting") {
  // sa -> x -> v and sa -> z -> v with sb -> z: node z is reached by both
  // seeds simultaneously, so its own infector choice is a coin flip; v then
  // inherits A with probability 1/2 * 1 + 1/2 * 1/2 = 3/4.
  DirectedGraph g = default_params(build_graph(5, {{0, 2, 1.0},   // sa -> x
                                                   {0, 3, 1.0},   // sa -> z
                                                   {1, 3, 1.0},   // sb -> z
                                                   {2, 4, 1.0},   // x -> v
                                                   {3, 4, 1.0}}), // z -> v
                                   1.0);
  SeedSet seeds({{0, 1}, {1, 2}}, 2);
  PredictionMatrix f = exact_f(g, seeds);
  CHECK(f.at(3, 1) == 0.5);
  CHECK(f.at(3, 2) == 0.5);
  CHECK(f.at(4, 0) == 0.0);
  CHECK(f.at(4, 1) == 0.75);
  CHECK(f.at(4, 2) == 0.25);
}

TEST_CASE("oracle: rows are distributions and uninfected mass sits in column 0") {
  Rng rng(51);
  for (int it = 0; it < 20; ++it) {
    gen::RandomGraph rg = gen::random_graph(rng, 8, 10);
    DirectedGraph g = gen::with_random_p(rg, rng);
    SeedSet seeds = gen::random_seeds(rng, rg.n, 3);
    PredictionMatrix f = exact_f(g, seeds);
    for (NodeId v = 0; v < rg.n; ++v) {
      double sum = 0.0;
      for (int l = 0; l <= f.num_labels; ++l) {
        REQUIRE(f.at(v, l) >= 0.0);
        sum += f.at(v, l);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (const auto& e : seeds.entries) CHECK(f.at(e.node, e.label) == 1.0);
  }
}

TEST_CASE("oracle: exact f satisfies its own linear system (property)") {
  Rng rng(52);
  for (int it = 0; it < 30; ++it) {
    gen::RandomGraph rg = gen::random_graph(rng, 7, 8);
    DirectedGraph g = gen::with_random_p(rg, rng);
    SeedSet seeds = gen::random_seeds(rng, rg.n, 3);
    ExactSolution sol = exact_infector_and_bias(g, seeds);
    CHECK(laplacian_residual(sol.f, sol.tbar, sol.b) <= 1e-10);
    CHECK(quadratic_objective(sol.f, sol.tbar, sol.b) <= 1e-20);

    // Expected infector matrix is row-stochastic.
    for (NodeId v = 0; v < rg.n; ++v) {
      double sum = 0.0;
      for (NodeId u = 0; u < rg.n; ++u) sum += sol.tbar[size_t(v) * rg.n + u];
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("oracle: deterministic edges zero the covariance bias") {
  Rng rng(53);
  for (int it = 0; it < 10; ++it) {
    gen::RandomGraph rg = gen::random_graph(rng, 7, 8);
    DirectedGraph g = gen::with_random_p(rg, rng, 1.0, 1.0);  // p = 1 everywhere
    SeedSet seeds = gen::random_seeds(rng, rg.n, 2);
    ExactSolution sol = exact_infector_and_bias(g, seeds);
    double norm = 0.0;
    for (double x : sol.b) norm += x * x;
    CHECK(std::sqrt(norm) <= 1e-12);
  }
}

TEST_CASE("oracle: quadratic objective is minimized at the exact solution") {
  DirectedGraph g = default_params(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 0.5);
  SeedSet seeds({{0, 1}}, 1);
  ExactSolution sol = exact_infector_and_bias(g, seeds);
  double at_f = quadratic_objective(sol.f, sol.tbar, sol.b);

  PredictionMatrix off = sol.f;
  off.at(2, 0) += 0.1;
  off.at(2, 1) -= 0.1;
  CHECK(quadratic_objective(off, sol.tbar, sol.b) > at_f + 1e-6);
}

TEST_CASE("oracle: literal cascade equals the shortest-path samplers exactly") {
  Rng rng(54);
  for (int it = 0; it < 30; ++it) {
    gen::RandomGraph rg = gen::random_graph(rng, 9, 12);
    DirectedGraph g = gen::with_random_p(rg, rng);
    SeedSet seeds = gen::random_seeds(rng, rg.n, 3);

    Rng table_rng(9000 + it);
    DelayModel replay =
        DelayModel::replay(make_replay_table(DelayModel::ic_unit(), g, table_rng));

    uint64_t key_seed = 5000 + it;
    Rng ra(key_seed), rb(key_seed), rc(key_seed);
    InstanceOutcome a = naive_simulate(g, seeds, replay, ra);
    InstanceOutcome b = run_instance(g, seeds, replay, nullptr, rb);
    InstanceOutcome c = basic_instance(g, seeds, replay, rc);

    CHECK(a.label == b.label);
    CHECK(a.dist == b.dist);
    CHECK(a.ancestor == b.ancestor);
    CHECK(a.infector == b.infector);
    CHECK(a.label == c.label);
    CHECK(a.dist == c.dist);
    CHECK(a.ancestor == c.ancestor);
    CHECK(a.infector == c.infector);
  }
}

TEST_CASE("oracle: literal cascade rejects non-unit delay models") {
  DirectedGraph g = default_params(build_graph(2, {{0, 1, 1.0}}), 1.0);
  SeedSet seeds({{0, 1}}, 1);
  Rng rng(1);
  CHECK_THROWS(naive_simulate(g, seeds, DelayModel::ctic(), rng));
  CHECK_THROWS(naive_simulate(g, seeds, DelayModel::replay({0.5}), rng));
}

TEST_CASE("oracle: chain influence is 7/4") {
  DirectedGraph g = default_params(build_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 0.5);
  SeedSet seeds({{0, 1}}, 1);
  CHECK(exact_influence(g, seeds) == 1.75);
}

TEST_CASE("oracle: enumeration bails out beyond 20 edges") {
  std::vector<EdgeInput> edges;
  for (int v = 0; v < 21; ++v) edges.push_back({v, v + 1, 1.0});
  DirectedGraph g = default_params(build_graph(22, edges), 0.5);
  SeedSet seeds({{0, 1}}, 1);
  CHECK_THROWS(exact_f(g, seeds));
}
