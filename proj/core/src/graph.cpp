#include "infprop/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace infprop {

namespace {

std::string edge_str(NodeId u, NodeId v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

EdgeId DirectedGraph::find_edge(NodeId u, NodeId v) const {
  const NodeId* first = out_dst.data() + out_off[u];
  const NodeId* last = out_dst.data() + out_off[u + 1];
  const NodeId* it = std::lower_bound(first, last, v);
  if (it == last || *it != v) return -1;
  return EdgeId(it - out_dst.data());
}

DirectedGraph build_graph(int n, const std::vector<EdgeInput>& edges, bool undirected) {
  if (n < 0) throw std::invalid_argument("build_graph: negative node count");

  std::vector<EdgeInput> arcs;
  arcs.reserve(edges.size() * (undirected ? 2 : 1));
  for (const auto& e : edges) {
    arcs.push_back(e);
    if (undirected) arcs.push_back({e.v, e.u, e.w});
  }

  for (const auto& e : arcs) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw std::invalid_argument("build_graph: edge " + edge_str(e.u, e.v) +
                                  " has node outside 0.." + std::to_string(n - 1));
    if (e.u == e.v)
      throw std::invalid_argument("build_graph: self-loop " + edge_str(e.u, e.v));
    if (!(e.w >= 0.0) || !std::isfinite(e.w))
      throw std::invalid_argument("build_graph: edge " + edge_str(e.u, e.v) +
                                  " has invalid weight " + std::to_string(e.w));
  }

  std::stable_sort(arcs.begin(), arcs.end(), [](const EdgeInput& a, const EdgeInput& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (size_t i = 1; i < arcs.size(); ++i) {
    if (arcs[i].u == arcs[i - 1].u && arcs[i].v == arcs[i - 1].v)
      throw std::invalid_argument("build_graph: duplicate edge " +
                                  edge_str(arcs[i].u, arcs[i].v));
  }

  DirectedGraph g;
  g.n = n;
  g.m = int(arcs.size());
  g.from_undirected = undirected;
  g.out_off.assign(n + 1, 0);
  g.out_dst.resize(g.m);
  g.w.resize(g.m);
  for (const auto& e : arcs) g.out_off[e.u + 1]++;
  std::partial_sum(g.out_off.begin(), g.out_off.end(), g.out_off.begin());
  for (int i = 0; i < g.m; ++i) {
    g.out_dst[i] = arcs[i].v;
    g.w[i] = arcs[i].w;
  }

  g.in_off.assign(n + 1, 0);
  g.in_src.resize(g.m);
  g.in_eid.resize(g.m);
  for (int i = 0; i < g.m; ++i) g.in_off[g.out_dst[i] + 1]++;
  std::partial_sum(g.in_off.begin(), g.in_off.end(), g.in_off.begin());
  std::vector<int32_t> cursor(g.in_off.begin(), g.in_off.end() - 1);
  for (NodeId u = 0; u < n; ++u) {
    for (int32_t e = g.out_off[u]; e < g.out_off[u + 1]; ++e) {
      int32_t pos = cursor[g.out_dst[e]]++;
      g.in_src[pos] = u;
      g.in_eid[pos] = e;
    }
  }
  return g;
}

DirectedGraph default_params(const DirectedGraph& g, double p_global) {
  if (!(p_global >= 0.0 && p_global <= 1.0))
    throw std::invalid_argument("default_params: p_global " + std::to_string(p_global) +
                                " outside [0,1]");
  DirectedGraph out = g;
  out.p.assign(g.m, p_global);
  out.theta.resize(g.m);
  for (NodeId u = 0; u < g.n; ++u) {
    double th = g.out_degree(u) > 0 ? 1.0 / g.out_degree(u) : 1.0;
    for (int32_t e = g.out_off[u]; e < g.out_off[u + 1]; ++e) out.theta[e] = th;
  }
  out.params_set = true;
  return out;
}

LTGraph::LTGraph(DirectedGraph graph) : g(std::move(graph)) {
  residual.assign(g.n, 1.0);
  for (NodeId v = 0; v < g.n; ++v) {
    double sum = 0.0;
    for (int32_t e = g.in_off[v]; e < g.in_off[v + 1]; ++e) {
      double wv = g.w[g.in_eid[e]];
      if (wv < 0.0)
        throw std::invalid_argument("LTGraph: negative in-weight at node " +
                                    std::to_string(v));
      sum += wv;
    }
    if (sum > 1.0 + 1e-12)
      throw std::invalid_argument("LTGraph: incoming weights of node " + std::to_string(v) +
                                  " sum to " + std::to_string(sum) + " > 1");
    residual[v] = 1.0 - sum;
  }
}

}  // namespace infprop
