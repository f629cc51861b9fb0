#pragma once

#include "infprop/graph.hpp"
#include "infprop/types.hpp"

namespace infprop {

struct LabelPropConfig {
  double tolerance = 1e-12;  // max-norm change per sweep
  int max_iterations = 10000;
  bool symmetrize = true;  // W <- (W + W^T)/2 before row-normalizing
};

struct LabelPropResult {
  PredictionMatrix pred;  // column 0 identically 0
  bool converged = true;
  int iterations = 0;
};

// Iterates f <- D^{-1} W f with seed rows clamped one-hot until the largest
// per-sweep change drops below tolerance. Rows that end with zero label mass
// (components with no seed) become uniform 1/L; other rows are renormalized
// to sum exactly 1 over labels 1..L.
LabelPropResult labelprop(const DirectedGraph& g, const SeedSet& seeds,
                          const LabelPropConfig& config = {});

// Multi-source Dijkstra over the edge weights: each node takes the label of
// its nearest seed, splitting mass uniformly over equidistant seeds;
// unreachable nodes keep null mass 1. Throws on negative weights.
PredictionMatrix shortpaths(const DirectedGraph& g, const SeedSet& seeds);

}  // namespace infprop
