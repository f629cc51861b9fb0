#include "infprop/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace infprop {

namespace {

// Row-normalized affinity rows, optionally from (W + W^T)/2.
struct AffinityRows {
  std::vector<int32_t> off;
  std::vector<NodeId> col;
  std::vector<double> val;
};

AffinityRows build_affinity(const DirectedGraph& g, bool symmetrize) {
  AffinityRows a;
  a.off.assign(g.n + 1, 0);
  if (!symmetrize) {
    a.off.assign(g.out_off.begin(), g.out_off.end());
    a.col = g.out_dst;
    a.val = g.w;
  } else {
    // Merge out-edges at weight w/2 with in-edges at weight w/2; a pair
    // present in both directions contributes (w_uv + w_vu)/2.
    std::vector<std::map<NodeId, double>> rows(g.n);
    for (NodeId u = 0; u < g.n; ++u)
      for (int32_t e = g.out_off[u]; e < g.out_off[u + 1]; ++e) {
        rows[u][g.out_dst[e]] += g.w[e] / 2.0;
        rows[g.out_dst[e]][u] += g.w[e] / 2.0;
      }
    for (NodeId u = 0; u < g.n; ++u) a.off[u + 1] = a.off[u] + int32_t(rows[u].size());
    a.col.resize(a.off[g.n]);
    a.val.resize(a.off[g.n]);
    for (NodeId u = 0; u < g.n; ++u) {
      int32_t pos = a.off[u];
      for (const auto& [v, w] : rows[u]) {
        a.col[pos] = v;
        a.val[pos] = w;
        ++pos;
      }
    }
  }
  for (NodeId u = 0; u < g.n; ++u) {
    double sum = 0.0;
    for (int32_t e = a.off[u]; e < a.off[u + 1]; ++e) sum += a.val[e];
    if (sum > 0.0)
      for (int32_t e = a.off[u]; e < a.off[u + 1]; ++e) a.val[e] /= sum;
  }
  return a;
}

}  // namespace

LabelPropResult labelprop(const DirectedGraph& g, const SeedSet& seeds,
                          const LabelPropConfig& config) {
  if (config.tolerance <= 0.0) throw std::invalid_argument("labelprop: tolerance <= 0");
  if (config.max_iterations < 1)
    throw std::invalid_argument("labelprop: max_iterations < 1");
  if (seeds.empty()) throw std::invalid_argument("labelprop: empty seed set");
  seeds.validate(g.n);

  const int L = seeds.num_labels, cols = L + 1;
  AffinityRows a = build_affinity(g, config.symmetrize);

  std::vector<uint8_t> clamped(g.n, 0);
  std::vector<double> f(size_t(g.n) * cols, 0.0), fnext(size_t(g.n) * cols, 0.0);
  for (const auto& s : seeds.entries) {
    clamped[s.node] = 1;
    f[size_t(s.node) * cols + s.label] = 1.0;
  }

  LabelPropResult res;
  res.converged = false;
  int iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    double change = 0.0;
    for (NodeId u = 0; u < g.n; ++u) {
      double* nu = &fnext[size_t(u) * cols];
      if (clamped[u]) {
        std::copy(&f[size_t(u) * cols], &f[size_t(u) * cols] + cols, nu);
        continue;
      }
      std::fill(nu, nu + cols, 0.0);
      for (int32_t e = a.off[u]; e < a.off[u + 1]; ++e) {
        const double* fv = &f[size_t(a.col[e]) * cols];
        for (int l = 1; l <= L; ++l) nu[l] += a.val[e] * fv[l];
      }
      for (int l = 1; l <= L; ++l)
        change = std::max(change, std::abs(nu[l] - f[size_t(u) * cols + l]));
    }
    std::swap(f, fnext);
    if (change < config.tolerance) {
      res.converged = true;
      ++iter;
      break;
    }
  }
  res.iterations = iter;

  // Finalize: zero-mass rows (components without seeds) become uniform over
  // labels; everything else is renormalized to sum exactly 1.
  res.pred = PredictionMatrix(g.n, L, 0);
  for (NodeId u = 0; u < g.n; ++u) {
    double sum = 0.0;
    for (int l = 1; l <= L; ++l) sum += f[size_t(u) * cols + l];
    double* row = &res.pred.p[size_t(u) * cols];
    if (sum == 0.0) {
      for (int l = 1; l <= L; ++l) row[l] = 1.0 / L;
    } else {
      for (int l = 1; l <= L; ++l) row[l] = f[size_t(u) * cols + l] / sum;
    }
  }
  for (const auto& s : seeds.entries) {
    double* row = &res.pred.p[size_t(s.node) * cols];
    std::fill(row, row + cols, 0.0);
    row[s.label] = 1.0;
  }
  return res;
}

PredictionMatrix shortpaths(const DirectedGraph& g, const SeedSet& seeds) {
  if (seeds.empty()) throw std::invalid_argument("shortpaths: empty seed set");
  seeds.validate(g.n);
  for (double wv : g.w)
    if (wv < 0.0) throw std::invalid_argument("shortpaths: negative weight");

  const int L = seeds.num_labels, cols = L + 1;
  const int k = int(seeds.size());

  // One Dijkstra per seed; a node's mass splits uniformly over the seeds
  // attaining its minimum distance.
  std::vector<double> best(g.n, kInf);
  std::vector<std::vector<double>> dists(k);
  struct Entry {
    double d;
    NodeId v;
    bool operator>(const Entry& o) const { return d > o.d; }
  };
  for (int si = 0; si < k; ++si) {
    auto& dist = dists[si];
    dist.assign(g.n, kInf);
    std::vector<uint8_t> done(g.n, 0);
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
    dist[seeds.entries[si].node] = 0.0;
    pq.push({0.0, seeds.entries[si].node});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (done[v]) continue;
      done[v] = 1;
      for (int32_t e = g.out_off[v]; e < g.out_off[v + 1]; ++e) {
        NodeId u = g.out_dst[e];
        double alt = d + g.w[e];
        if (!done[u] && alt < dist[u]) {
          dist[u] = alt;
          pq.push({alt, u});
        }
      }
    }
    for (NodeId v = 0; v < g.n; ++v) best[v] = std::min(best[v], dist[v]);
  }

  PredictionMatrix pred(g.n, L, 0);
  for (NodeId v = 0; v < g.n; ++v) {
    double* row = &pred.p[size_t(v) * cols];
    if (best[v] == kInf) {
      row[0] = 1.0;
      continue;
    }
    int ties = 0;
    for (int si = 0; si < k; ++si)
      if (dists[si][v] == best[v]) ++ties;
    for (int si = 0; si < k; ++si)
      if (dists[si][v] == best[v]) row[seeds.entries[si].label] += 1.0 / ties;
  }
  for (const auto& s : seeds.entries) {
    double* row = &pred.p[size_t(s.node) * cols];
    std::fill(row, row + cols, 0.0);
    row[s.label] = 1.0;
  }
  return pred;
}

}  // namespace infprop
