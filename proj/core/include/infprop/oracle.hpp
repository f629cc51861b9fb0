#pragma once

#include <vector>

#include "infprop/dynamics.hpp"
#include "infprop/graph.hpp"
#include "infprop/propagation.hpp"
#include "infprop/types.hpp"

namespace infprop {

// Exact quantities from full enumeration of the 2^m active-edge subsets.
// T is the one-hot infector matrix (row v has a 1 at v's infector; seeds and
// uninfected nodes point at themselves), tbar its expectation, and
// b_ul = sum_v Cov(T_uv, Y_vl), so that f = tbar f + b holds exactly.
// subset_weight[mask] is the probability of active-edge subset `mask`.
struct ExactSolution {
  PredictionMatrix f;
  std::vector<double> tbar;  // n x n, row-major
  std::vector<double> b;     // n x (L+1), row-major
  std::vector<double> subset_weight;
};

// Exact f by enumeration. Unit-delay discrete dynamics with per-edge p;
// within a subset, a node with several minimizing predecessors spreads its
// mass uniformly over them, independently across nodes, matching the
// samplers' tie rule in expectation. Throws when m > 20.
PredictionMatrix exact_f(const DirectedGraph& g, const SeedSet& seeds);

// Exact f, expected infector matrix, and covariance bias in one enumeration.
ExactSolution exact_infector_and_bias(const DirectedGraph& g, const SeedSet& seeds);

// Frobenius norm of (I - tbar) f - b.
double laplacian_residual(const PredictionMatrix& f, const std::vector<double>& tbar,
                          const std::vector<double>& b);

// sum_{u,l} (f'_ul - sum_v tbar_uv f'_vl - b_ul)^2; equals the squared
// residual at f' = f.
double quadratic_objective(const PredictionMatrix& fprime, const std::vector<double>& tbar,
                           const std::vector<double>& b);

// Literal discrete-time competitive cascade: nodes infected at step t attempt
// each not-yet-infected out-neighbor once at step t+1; simultaneous successful
// infectors tie-break with the shared tie hash (first rng draw). Unit-delay
// models only (ICUnit, or Replay over {1, inf} tables).
InstanceOutcome naive_simulate(const DirectedGraph& g, const SeedSet& seeds,
                               const DelayModel& model, Rng& rng);
InstanceOutcome naive_simulate(const DirectedGraph& g, const SeedSet& seeds, Rng& rng);

// Expected number of infected nodes: sum_v (1 - f_v0), by enumeration.
double exact_influence(const DirectedGraph& g, const SeedSet& seeds);

}  // namespace infprop
