#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "infprop/dynamics.hpp"
#include "infprop/graph.hpp"
#include "infprop/rng.hpp"
#include "infprop/types.hpp"

namespace infprop {

// Per-node confidence sigma_v = 1 - f_v0 and its sum, which is the expected
// number of infected nodes under the seed set that produced f.
struct Confidence {
  std::vector<double> per_node;
  double total = 0.0;
};
Confidence confidence(const PredictionMatrix& pred);

struct SelectionResult {
  std::vector<NodeId> chosen;          // in pick order
  std::vector<double> marginal_gains;  // estimated gain at each pick
  std::vector<int64_t> estimates;      // Monte-Carlo instances behind each pick
};

// Lazy greedy maximization of a set function given by `influence`; valid when
// the function is monotone submodular (influence is). Upper bounds from prior
// rounds defer re-evaluation; each pick re-scores at most the heap prefix.
// `pool` is the candidate set; influence({}) is taken to be 0.
SelectionResult greedy_select_with(const std::function<double(const std::vector<NodeId>&)>& influence,
                                   const std::vector<NodeId>& pool, int k,
                                   int64_t samples_per_estimate);

// Greedy seed selection by Monte-Carlo influence estimates. Every evaluation
// within the run replays the same N activation tables (streams derived from
// (master_seed, i)), so candidate comparisons use common random numbers.
// candidate_cap > 0 restricts the pool to that many top-out-degree nodes.
SelectionResult greedy_select(const DirectedGraph& g, const DelayModel& model, int k,
                              int64_t N_per_estimate, uint64_t master_seed,
                              int candidate_cap = 0);

// Greedy with exact enumeration influence (m <= 20 edges).
SelectionResult greedy_select_exact(const DirectedGraph& g, int k);

// Top-k nodes by out-degree, ties toward the smaller node index.
SelectionResult hideg_select(const DirectedGraph& g, int k);

// Uniform sample of k distinct nodes.
SelectionResult random_select(const DirectedGraph& g, int k, Rng& rng);

// Monte-Carlo influence of a seed set: mean reached-node count over N replay
// tables regenerated from (master_seed, i). Shared by greedy_select and tests.
double estimate_influence(const DirectedGraph& g, const DelayModel& model,
                          const std::vector<NodeId>& seeds, int64_t N, uint64_t master_seed);

}  // namespace infprop
