#pragma once

#include <string>
#include <vector>

#include "infprop/types.hpp"

namespace infprop {

struct EdgeInput {
  NodeId u, v;
  double w = 1.0;
};

// Immutable weighted directed graph in CSR form, with per-edge activation
// probability p and incubation parameter theta. Edge ids are positions in the
// out-CSR arrays; the in-CSR mirrors them through in_eid.
struct DirectedGraph {
  int n = 0;
  int m = 0;

  std::vector<int32_t> out_off;  // n+1
  std::vector<NodeId> out_dst;   // m, sorted within each source block
  std::vector<double> w;         // m
  std::vector<double> p;         // m, valid iff params_set
  std::vector<double> theta;     // m, valid iff params_set

  std::vector<int32_t> in_off;  // n+1
  std::vector<NodeId> in_src;   // m
  std::vector<EdgeId> in_eid;   // m, edge id in the out-CSR

  bool params_set = false;
  bool from_undirected = false;

  int out_degree(NodeId u) const { return out_off[u + 1] - out_off[u]; }
  int in_degree(NodeId v) const { return in_off[v + 1] - in_off[v]; }

  // Edge id for (u,v), or -1. Binary search within u's block.
  EdgeId find_edge(NodeId u, NodeId v) const;
};

// Validates and builds the CSR layout. p and theta are left unset; apply
// default_params or load them from file columns. Throws std::invalid_argument
// naming the offending edge on self-loops, duplicates, or range errors.
// With undirected=true each input edge is expanded to two directed arcs.
DirectedGraph build_graph(int n, const std::vector<EdgeInput>& edges,
                          bool undirected = false);

// Sets p_uv = p_global on every edge and theta_uv = 1/out_degree(u).
// Idempotent; topology untouched. p_global must lie in [0,1].
DirectedGraph default_params(const DirectedGraph& g, double p_global);

// Directed graph whose per-node incoming weight sums are at most 1; carries
// the residual mass of picking no in-edge at all.
struct LTGraph {
  DirectedGraph g;
  std::vector<double> residual;  // n, 1 - sum of in-weights

  explicit LTGraph(DirectedGraph graph);
};

}  // namespace infprop
