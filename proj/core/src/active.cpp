#include "infprop/active.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "infprop/oracle.hpp"

namespace infprop {

Confidence confidence(const PredictionMatrix& pred) {
  Confidence c;
  c.per_node.resize(pred.n);
  for (NodeId v = 0; v < pred.n; ++v) {
    c.per_node[v] = 1.0 - pred.at(v, 0);
    c.total += c.per_node[v];
  }
  return c;
}

double estimate_influence(const DirectedGraph& g, const DelayModel& model,
                          const std::vector<NodeId>& seeds, int64_t N,
                          uint64_t master_seed) {
  if (N < 1) throw std::invalid_argument("estimate_influence: N must be at least 1");
  int64_t reached_total = 0;
  std::vector<uint8_t> reached(g.n);
  std::vector<NodeId> stack;
  for (int64_t i = 0; i < N; ++i) {
    Rng rng = derive_stream(master_seed, uint64_t(i));
    std::vector<double> table = make_replay_table(model, g, rng);
    std::fill(reached.begin(), reached.end(), 0);
    stack.assign(seeds.begin(), seeds.end());
    for (NodeId s : stack) reached[s] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++reached_total;
      for (int32_t e = g.out_off[v]; e < g.out_off[v + 1]; ++e) {
        NodeId u = g.out_dst[e];
        if (!reached[u] && table[e] < kInf) {
          reached[u] = 1;
          stack.push_back(u);
        }
      }
    }
  }
  return double(reached_total) / double(N);
}

SelectionResult greedy_select_with(
    const std::function<double(const std::vector<NodeId>&)>& influence,
    const std::vector<NodeId>& pool, int k, int64_t samples_per_estimate) {
  if (k < 0 || k > int(pool.size()))
    throw std::invalid_argument("greedy_select_with: k outside 0..|pool|");

  // Lazy greedy: stale upper bounds from earlier rounds delay re-evaluation;
  // submodularity of the influence function makes the certificate valid.
  struct HeapEntry {
    double gain;
    double total;  // influence(S + node) at evaluation time
    NodeId node;
    int round;
    bool operator<(const HeapEntry& o) const {
      return gain != o.gain ? gain < o.gain : node > o.node;
    }
  };
  std::priority_queue<HeapEntry> heap;
  for (NodeId v : pool) heap.push({kInf, kInf, v, -1});

  SelectionResult res;
  std::vector<NodeId> current;
  double sigma = 0.0;
  std::vector<NodeId> trial;
  for (int round = 0; round < k; ++round) {
    for (;;) {
      HeapEntry top = heap.top();
      heap.pop();
      if (top.round == round) {
        current.push_back(top.node);
        sigma = top.total;
        res.chosen.push_back(top.node);
        res.marginal_gains.push_back(top.gain);
        res.estimates.push_back(samples_per_estimate);
        break;
      }
      trial = current;
      trial.push_back(top.node);
      double total = influence(trial);
      heap.push({total - sigma, total, top.node, round});
    }
  }
  return res;
}

SelectionResult greedy_select(const DirectedGraph& g, const DelayModel& model, int k,
                              int64_t N_per_estimate, uint64_t master_seed,
                              int candidate_cap) {
  if (k > g.n) throw std::invalid_argument("greedy_select: k > n");
  std::vector<NodeId> pool;
  if (candidate_cap > 0 && candidate_cap < g.n) {
    SelectionResult top = hideg_select(g, candidate_cap);
    pool = top.chosen;
    std::sort(pool.begin(), pool.end());
    if (k > int(pool.size()))
      throw std::invalid_argument("greedy_select: k exceeds candidate pool");
  } else {
    pool.resize(g.n);
    for (NodeId v = 0; v < g.n; ++v) pool[v] = v;
  }
  // Every evaluation replays the same N activation tables: common random
  // numbers across candidates, and an exactly submodular estimate.
  auto influence = [&](const std::vector<NodeId>& s) {
    return estimate_influence(g, model, s, N_per_estimate, master_seed);
  };
  return greedy_select_with(influence, pool, k, N_per_estimate);
}

SelectionResult greedy_select_exact(const DirectedGraph& g, int k) {
  if (k > g.n) throw std::invalid_argument("greedy_select_exact: k > n");
  std::vector<NodeId> pool(g.n);
  for (NodeId v = 0; v < g.n; ++v) pool[v] = v;
  auto influence = [&](const std::vector<NodeId>& s) {
    std::vector<SeedSet::Entry> entries;
    entries.reserve(s.size());
    for (NodeId v : s) entries.push_back({v, 1});
    return exact_influence(g, SeedSet(entries, 1));
  };
  return greedy_select_with(influence, pool, k, 0);
}

SelectionResult hideg_select(const DirectedGraph& g, int k) {
  if (k > g.n) throw std::invalid_argument("hideg_select: k > n");
  std::vector<NodeId> order(g.n);
  for (NodeId v = 0; v < g.n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    int da = g.out_degree(a), db = g.out_degree(b);
    return da != db ? da > db : a < b;
  });
  SelectionResult res;
  for (int i = 0; i < k; ++i) {
    res.chosen.push_back(order[i]);
    res.marginal_gains.push_back(double(g.out_degree(order[i])));
    res.estimates.push_back(0);
  }
  return res;
}

SelectionResult random_select(const DirectedGraph& g, int k, Rng& rng) {
  if (k > g.n) throw std::invalid_argument("random_select: k > n");
  std::vector<NodeId> order(g.n);
  for (NodeId v = 0; v < g.n; ++v) order[v] = v;
  SelectionResult res;
  for (int i = 0; i < k; ++i) {
    int j = i + int(rng.next_below(uint64_t(g.n - i)));
    std::swap(order[i], order[j]);
    res.chosen.push_back(order[i]);
    res.marginal_gains.push_back(0.0);
    res.estimates.push_back(0);
  }
  return res;
}

}  // namespace infprop
