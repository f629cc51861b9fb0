#include "infprop/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace infprop {

namespace {

constexpr int kMaxEnumEdges = 20;

void check_enumerable(const DirectedGraph& g, const SeedSet& seeds) {
  if (!g.params_set) throw std::logic_error("oracle: edge parameters unset");
  if (g.m > kMaxEnumEdges)
    throw std::invalid_argument("oracle: " + std::to_string(g.m) +
                                " edges exceed the enumeration limit of " +
                                std::to_string(kMaxEnumEdges));
  if (seeds.empty()) throw std::invalid_argument("oracle: empty seed set");
  seeds.validate(g.n);
}

// Exact expectation by enumerating all 2^m active-edge subsets. Within a
// subset, unit-delay multi-source BFS gives distances; each infected non-seed
// spreads its infector mass uniformly over its minimizing predecessors,
// independently across nodes, and label distributions propagate through that
// choice: P_v = mean of P_u over minimizing predecessors u.
ExactSolution enumerate_subsets(const DirectedGraph& g, const SeedSet& seeds, bool want_t) {
  check_enumerable(g, seeds);
  const int n = g.n, m = g.m, L = seeds.num_labels, cols = L + 1;

  ExactSolution sol;
  sol.f = PredictionMatrix(n, L, 0);
  if (want_t) {
    sol.tbar.assign(size_t(n) * n, 0.0);
    sol.b.assign(size_t(n) * cols, 0.0);
  }
  sol.subset_weight.assign(size_t(1) << m, 0.0);

  std::vector<double> e1;  // sum_v E[T_uv Y_vl], accumulated per subset
  if (want_t) e1.assign(size_t(n) * cols, 0.0);

  std::vector<int> dist(n);
  std::vector<NodeId> frontier, next, order;
  std::vector<double> pdist(size_t(n) * cols);  // per-subset label distribution
  std::vector<NodeId> preds;

  std::vector<uint8_t> is_seed(n, 0);
  for (const auto& s : seeds.entries) is_seed[s.node] = 1;

  for (uint32_t mask = 0; mask < (uint32_t(1) << m); ++mask) {
    double pa = 1.0;
    for (int e = 0; e < m; ++e) pa *= (mask >> e & 1) ? g.p[e] : 1.0 - g.p[e];
    sol.subset_weight[mask] = pa;
    if (pa == 0.0) continue;

    std::fill(dist.begin(), dist.end(), -1);
    frontier.clear();
    order.clear();
    for (const auto& s : seeds.entries) {
      dist[s.node] = 0;
      frontier.push_back(s.node);
    }
    int d = 0;
    while (!frontier.empty()) {
      next.clear();
      for (NodeId u : frontier) {
        order.push_back(u);
        for (int32_t e = g.out_off[u]; e < g.out_off[u + 1]; ++e) {
          if (!(mask >> e & 1)) continue;
          NodeId v = g.out_dst[e];
          if (dist[v] < 0) {
            dist[v] = d + 1;
            next.push_back(v);
          }
        }
      }
      std::swap(frontier, next);
      ++d;
    }

    std::fill(pdist.begin(), pdist.end(), 0.0);
    for (NodeId v = 0; v < n; ++v)
      if (dist[v] < 0) pdist[size_t(v) * cols + 0] = 1.0;
    for (const auto& s : seeds.entries) pdist[size_t(s.node) * cols + s.label] = 1.0;

    for (NodeId v : order) {
      if (is_seed[v]) continue;
      preds.clear();
      for (int32_t e = g.in_off[v]; e < g.in_off[v + 1]; ++e) {
        if (!(mask >> g.in_eid[e] & 1)) continue;
        NodeId u = g.in_src[e];
        if (dist[u] >= 0 && dist[u] + 1 == dist[v]) preds.push_back(u);
      }
      double share = 1.0 / double(preds.size());
      double* pv = &pdist[size_t(v) * cols];
      for (NodeId u : preds) {
        const double* pu = &pdist[size_t(u) * cols];
        for (int l = 0; l < cols; ++l) pv[l] += share * pu[l];
      }
      if (want_t) {
        double* bu = &e1[size_t(v) * cols];
        for (NodeId u : preds) {
          sol.tbar[size_t(v) * n + u] += pa * share;
          const double* pu = &pdist[size_t(u) * cols];
          for (int l = 0; l < cols; ++l) bu[l] += pa * share * pu[l];
        }
      }
    }

    for (NodeId v = 0; v < n; ++v)
      for (int l = 0; l < cols; ++l)
        sol.f.p[size_t(v) * cols + l] += pa * pdist[size_t(v) * cols + l];

    if (want_t) {
      // Self-loop rows: seeds and uninfected nodes point at themselves.
      for (NodeId v = 0; v < n; ++v) {
        if (!is_seed[v] && dist[v] >= 0) continue;
        sol.tbar[size_t(v) * n + v] += pa;
        for (int l = 0; l < cols; ++l)
          e1[size_t(v) * cols + l] += pa * pdist[size_t(v) * cols + l];
      }
    }
  }

  // Seed rows are provably one-hot; clamp away subset-sum rounding so the
  // published invariants (clamped seeds, zero seed bias) hold exactly.
  for (const auto& s : seeds.entries) {
    double* fv = &sol.f.p[size_t(s.node) * cols];
    std::fill(fv, fv + cols, 0.0);
    fv[s.label] = 1.0;
    if (want_t) {
      double* tv = &sol.tbar[size_t(s.node) * n];
      std::fill(tv, tv + n, 0.0);
      tv[s.node] = 1.0;
      double* ev = &e1[size_t(s.node) * cols];
      std::fill(ev, ev + cols, 0.0);
      ev[s.label] = 1.0;
    }
  }

  if (want_t) {
    // b_ul = sum_v E[T_uv Y_vl] - sum_v tbar_uv f_vl
    for (NodeId u = 0; u < n; ++u) {
      for (int l = 0; l < cols; ++l) {
        double dot = 0.0;
        for (NodeId v = 0; v < n; ++v)
          dot += sol.tbar[size_t(u) * n + v] * sol.f.p[size_t(v) * cols + l];
        sol.b[size_t(u) * cols + l] = e1[size_t(u) * cols + l] - dot;
      }
    }
  }
  return sol;
}

}  // namespace

PredictionMatrix exact_f(const DirectedGraph& g, const SeedSet& seeds) {
  return enumerate_subsets(g, seeds, false).f;
}

ExactSolution exact_infector_and_bias(const DirectedGraph& g, const SeedSet& seeds) {
  return enumerate_subsets(g, seeds, true);
}

double laplacian_residual(const PredictionMatrix& f, const std::vector<double>& tbar,
                          const std::vector<double>& b) {
  const int n = f.n, cols = f.num_labels + 1;
  if (tbar.size() != size_t(n) * n || b.size() != size_t(n) * cols)
    throw std::invalid_argument("laplacian_residual: shape mismatch");
  double acc = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    for (int l = 0; l < cols; ++l) {
      double r = f.p[size_t(u) * cols + l] - b[size_t(u) * cols + l];
      for (NodeId v = 0; v < n; ++v)
        r -= tbar[size_t(u) * n + v] * f.p[size_t(v) * cols + l];
      acc += r * r;
    }
  }
  return std::sqrt(acc);
}

double quadratic_objective(const PredictionMatrix& fprime, const std::vector<double>& tbar,
                           const std::vector<double>& b) {
  const int n = fprime.n, cols = fprime.num_labels + 1;
  if (tbar.size() != size_t(n) * n || b.size() != size_t(n) * cols)
    throw std::invalid_argument("quadratic_objective: shape mismatch");
  double acc = 0.0;
  for (NodeId u = 0; u < n; ++u) {
    for (int l = 0; l < cols; ++l) {
      double r = fprime.p[size_t(u) * cols + l] - b[size_t(u) * cols + l];
      for (NodeId v = 0; v < n; ++v)
        r -= tbar[size_t(u) * n + v] * fprime.p[size_t(v) * cols + l];
      acc += r * r;
    }
  }
  return acc;
}

InstanceOutcome naive_simulate(const DirectedGraph& g, const SeedSet& seeds,
                               const DelayModel& model, Rng& rng) {
  if (seeds.empty()) throw std::invalid_argument("naive_simulate: empty seed set");
  seeds.validate(g.n);
  if (model.variant == DelayVariant::CTICExp)
    throw std::invalid_argument("naive_simulate: unit-delay models only");
  if (model.variant == DelayVariant::Replay) {
    for (double dl : model.table)
      if (dl != 1.0 && dl != kInf)
        throw std::invalid_argument("naive_simulate: replay table must be unit-delay");
  }
  const uint64_t key = rng.next_u64();

  InstanceOutcome out(g.n);
  std::vector<NodeId> frontier, next;
  for (const auto& s : seeds.entries) {
    out.dist[s.node] = 0.0;
    out.label[s.node] = s.label;
    out.ancestor[s.node] = s.node;
    frontier.push_back(s.node);
  }
  std::sort(frontier.begin(), frontier.end());

  std::vector<uint64_t> hbest(g.n, ~0ull);
  std::vector<uint8_t> reached(g.n, 0);
  for (const auto& s : seeds.entries) reached[s.node] = 1;
  double step = 0.0;
  while (!frontier.empty()) {
    next.clear();
    // Nodes infected in the previous step each attempt their not-yet-infected
    // out-neighbors once; simultaneous successes tie-break by hash.
    for (NodeId u : frontier) {
      for (int32_t e = g.out_off[u]; e < g.out_off[u + 1]; ++e) {
        NodeId v = g.out_dst[e];
        if (out.dist[v] < kInf) continue;
        double dl = sample_delay(model, g, e, rng);
        if (dl == kInf) continue;
        uint64_t h = tie_hash(key, v, u);
        if (!reached[v]) {
          reached[v] = 1;
          next.push_back(v);
        }
        if (h < hbest[v]) {
          hbest[v] = h;
          out.label[v] = out.label[u];
          out.ancestor[v] = out.ancestor[u];
          out.infector[v] = u;
        }
      }
    }
    ++step;
    for (NodeId v : next) out.dist[v] = step;
    std::sort(next.begin(), next.end());
    std::swap(frontier, next);
  }
  return out;
}

InstanceOutcome naive_simulate(const DirectedGraph& g, const SeedSet& seeds, Rng& rng) {
  return naive_simulate(g, seeds, DelayModel::ic_unit(), rng);
}

double exact_influence(const DirectedGraph& g, const SeedSet& seeds) {
  PredictionMatrix f = exact_f(g, seeds);
  double total = 0.0;
  for (NodeId v = 0; v < g.n; ++v) total += 1.0 - f.at(v, 0);
  return total;
}

}  // namespace infprop
