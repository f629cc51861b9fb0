#pragma once

#include <vector>

#include "infprop/graph.hpp"
#include "infprop/rng.hpp"
#include "infprop/types.hpp"

namespace infprop {

enum class DelayVariant { ICUnit, CTICExp, Replay };

// Edge-delay mixture: with probability p_e an edge gets a finite delay
// (1 for ICUnit, an exponential draw for CTICExp), otherwise +inf. Replay
// returns a fixed per-edge table verbatim, which injects the randomness for
// equivalence tests. theta is the exponential rate unless theta_is_scale.
struct DelayModel {
  DelayVariant variant = DelayVariant::ICUnit;
  bool theta_is_scale = false;
  std::vector<double> table;  // Replay only, indexed by edge id

  static DelayModel ic_unit() { return {DelayVariant::ICUnit, false, {}}; }
  static DelayModel ctic(bool scale = false) { return {DelayVariant::CTICExp, scale, {}}; }
  static DelayModel replay(std::vector<double> t) {
    return {DelayVariant::Replay, false, std::move(t)};
  }
};

// One draw from the mixture for the given edge. ICUnit consumes one uniform,
// CTICExp consumes one (p=1) or two; Replay consumes none.
double sample_delay(const DelayModel& model, const DirectedGraph& g, EdgeId e, Rng& rng);

// Pre-draws a delay for every edge, in edge-id order. Wrapping the result in
// DelayModel::replay fixes one instance's randomness for all consumers.
std::vector<double> make_replay_table(const DelayModel& model, const DirectedGraph& g,
                                      Rng& rng);

// Additive penalties q_v(l) = -log(rho_vl); zero when priors are absent or 1.
// rho = 0 yields +inf (label l can never reach v first); such entries are
// reported once on construction.
struct PenaltySource {
  PriorMatrix priors;

  explicit PenaltySource(PriorMatrix pm);
  double penalty(NodeId v, Label l) const;
};

// Per-node in-edge choice for the linear-threshold active set: node v picks
// in-edge e with probability w_e, or none with probability residual[v].
// Returns the chosen in-CSR position per node, -1 for none. Nodes with no
// in-edges consume no randomness.
std::vector<int32_t> sample_lt_active_set(const LTGraph& lt, Rng& rng);

// In-edge distribution of node v after multiplicatively penalizing one
// candidate in-edge (in-CSR position `pos`) by scale in [0,1]; the remaining
// choices, residual included, are renormalized to keep total mass 1. Returned
// vector holds one probability per in-edge of v plus the residual at the end.
std::vector<double> lt_penalized_distribution(const LTGraph& lt, NodeId v, int32_t pos,
                                              double scale);

}  // namespace infprop
