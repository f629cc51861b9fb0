#pragma once

#include <vector>

#include "infprop/graph.hpp"
#include "infprop/rng.hpp"
#include "infprop/types.hpp"

namespace infprop {

struct SynthParams {
  int communities = 3;
  int size = 64;         // nodes per community
  int overlap = 8;       // nodes per community that also join another one
  double noise = 0.05;   // edge probability between unrelated nodes
  double intra = 0.3;    // edge probability within a shared community

  void validate() const;
};

struct SynthResult {
  DirectedGraph graph;        // symmetric arcs, unit weights, params unset
  std::vector<Label> labels;  // primary community per node, 1..C
};

// Planted-community generator: communities * size nodes, each labeled by its
// primary community; `overlap` members of every community also join one other
// community. Every unordered pair sharing a community gets an edge with
// probability intra, all other pairs with probability noise; sampled edges
// are emitted as two directed arcs of weight 1.
SynthResult synth_community(const SynthParams& params, Rng& rng);

}  // namespace infprop
