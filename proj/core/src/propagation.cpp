#include "infprop/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <queue>
#include <thread>
#include <unordered_map>

namespace infprop {

namespace {

struct QueueEntry {
  double dist;
  NodeId node;
  bool operator>(const QueueEntry& o) const { return dist > o.dist; }
};

using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

// Single-source Dijkstra over a fixed delay table; inf entries are inactive.
void single_source(const DirectedGraph& g, const std::vector<double>& delay, NodeId src,
                   std::vector<double>& dist) {
  dist.assign(g.n, kInf);
  std::vector<uint8_t> done(g.n, 0);
  MinQueue pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = 1;
    for (int32_t e = g.out_off[v]; e < g.out_off[v + 1]; ++e) {
      NodeId u = g.out_dst[e];
      if (done[u] || delay[e] == kInf) continue;
      double alt = d + delay[e];
      if (alt < dist[u]) {
        dist[u] = alt;
        pq.push({alt, u});
      }
    }
  }
}

// Shared Monte-Carlo loop: strided instance assignment plus integer count
// reduction keeps the result bit-identical for any worker count.
template <typename PerInstance>
std::vector<uint64_t> accumulate_counts(int64_t N, uint64_t master_seed, int workers,
                                        size_t cells, const PerInstance& per_instance) {
  const int W = resolve_workers(workers);
  std::vector<std::vector<uint64_t>> local(W);
  auto work = [&](int wi) {
    auto& c = local[wi];
    c.assign(cells, 0);
    for (int64_t i = wi; i < N; i += W) {
      Rng rng = derive_stream(master_seed, uint64_t(i));
      per_instance(rng, c);
    }
  };
  if (W == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(W);
    for (int wi = 0; wi < W; ++wi) threads.emplace_back(work, wi);
    for (auto& t : threads) t.join();
  }
  std::vector<uint64_t> total(cells, 0);
  for (int wi = 0; wi < W; ++wi)
    for (size_t j = 0; j < cells; ++j) total[j] += local[wi][j];
  return total;
}

}  // namespace

int resolve_workers(int workers) {
  if (workers > 0) return workers;
  if (const char* env = std::getenv("INFPROP_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? int(hc) : 1;
}

InstanceOutcome run_instance(const DirectedGraph& g, const SeedSet& seeds,
                             const DelayModel& model, const PenaltySource* penalties,
                             Rng& rng) {
  if (seeds.empty()) throw std::invalid_argument("run_instance: empty seed set");
  seeds.validate(g.n);
  const uint64_t key = rng.next_u64();  // tie key first, delay draws after

  InstanceOutcome out(g.n);
  std::vector<uint64_t> hbest(g.n, ~0ull);
  std::vector<uint8_t> done(g.n, 0);
  MinQueue pq;

  for (const auto& s : seeds.entries) {
    out.dist[s.node] = 0.0;
    out.label[s.node] = s.label;
    out.ancestor[s.node] = s.node;
    pq.push({0.0, s.node});
  }

  while (!pq.empty()) {
    auto [d, v] = pq.top();
    pq.pop();
    if (done[v] || d > out.dist[v]) continue;
    done[v] = 1;
    for (int32_t e = g.out_off[v]; e < g.out_off[v + 1]; ++e) {
      NodeId u = g.out_dst[e];
      if (done[u]) continue;  // alt would exceed a finalized distance
      double delay = sample_delay(model, g, e, rng);
      if (delay == kInf) continue;
      if (!(delay > 0.0))
        throw std::invalid_argument("run_instance: nonpositive delay on edge " +
                                    std::to_string(e));
      double q = 0.0;
      if (penalties) {
        q = penalties->penalty(u, out.label[v]);
        if (q == kInf) continue;
      }
      double alt = out.dist[v] + delay + q;
      if (alt < out.dist[u]) {
        out.dist[u] = alt;
        out.label[u] = out.label[v];
        out.ancestor[u] = out.ancestor[v];
        out.infector[u] = v;
        hbest[u] = tie_hash(key, u, v);
        pq.push({alt, u});
      } else if (alt == out.dist[u]) {
        uint64_t h = tie_hash(key, u, v);
        if (h < hbest[u]) {
          out.label[u] = out.label[v];
          out.ancestor[u] = out.ancestor[v];
          out.infector[u] = v;
          hbest[u] = h;
        }
      }
    }
  }
  return out;
}

InstanceOutcome basic_instance(const DirectedGraph& g, const SeedSet& seeds,
                               const DelayModel& model, Rng& rng) {
  if (seeds.empty()) throw std::invalid_argument("basic_instance: empty seed set");
  seeds.validate(g.n);
  const uint64_t key = rng.next_u64();
  const std::vector<double>& delay =
      model.variant == DelayVariant::Replay ? model.table : make_replay_table(model, g, rng);
  for (double dl : delay)
    if (!(dl > 0.0)) throw std::invalid_argument("basic_instance: nonpositive delay");

  InstanceOutcome out(g.n);
  std::vector<double> d;
  for (const auto& s : seeds.entries) {
    single_source(g, delay, s.node, d);
    for (NodeId v = 0; v < g.n; ++v)
      if (d[v] < out.dist[v]) out.dist[v] = d[v];
  }

  for (const auto& s : seeds.entries) {
    out.dist[s.node] = 0.0;
    out.label[s.node] = s.label;
    out.ancestor[s.node] = s.node;
  }

  // Label assignment along minimizing predecessors, in distance order; the
  // tie hash picks the same forest run_instance would build.
  std::vector<NodeId> order;
  order.reserve(g.n);
  for (NodeId v = 0; v < g.n; ++v)
    if (out.dist[v] < kInf) order.push_back(v);
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return out.dist[a] < out.dist[b]; });

  for (NodeId v : order) {
    if (out.dist[v] == 0.0) continue;  // seeds only; delays are positive
    uint64_t best_h = ~0ull;
    NodeId best_u = -1;
    for (int32_t e = g.in_off[v]; e < g.in_off[v + 1]; ++e) {
      NodeId u = g.in_src[e];
      double dl = delay[g.in_eid[e]];
      if (dl == kInf || out.dist[u] == kInf) continue;
      if (out.dist[u] + dl == out.dist[v]) {
        uint64_t h = tie_hash(key, v, u);
        if (h < best_h) {
          best_h = h;
          best_u = u;
        }
      }
    }
    if (best_u < 0)
      throw std::logic_error("basic_instance: no tight predecessor for node " +
                             std::to_string(v));
    out.label[v] = out.label[best_u];
    out.ancestor[v] = out.ancestor[best_u];
    out.infector[v] = best_u;
  }
  return out;
}

PredictionMatrix infprop(const DirectedGraph& g, const SeedSet& seeds,
                         const DelayModel& model, const PenaltySource* penalties,
                         int64_t N, uint64_t master_seed, int workers) {
  if (N < 1) throw std::invalid_argument("infprop: N must be at least 1");
  const int cols = seeds.num_labels + 1;
  auto counts = accumulate_counts(
      N, master_seed, workers, size_t(g.n) * cols, [&](Rng& rng, std::vector<uint64_t>& c) {
        InstanceOutcome inst = run_instance(g, seeds, model, penalties, rng);
        for (NodeId v = 0; v < g.n; ++v) c[size_t(v) * cols + inst.label[v]]++;
      });
  PredictionMatrix pred(g.n, seeds.num_labels, N);
  for (size_t j = 0; j < counts.size(); ++j) pred.p[j] = double(counts[j]) / double(N);
  return pred;
}

PredictionMatrix basic_infprop(const DirectedGraph& g, const SeedSet& seeds,
                               const DelayModel& model, int64_t N, uint64_t master_seed,
                               int workers) {
  if (N < 1) throw std::invalid_argument("basic_infprop: N must be at least 1");
  const int cols = seeds.num_labels + 1;
  auto counts = accumulate_counts(
      N, master_seed, workers, size_t(g.n) * cols, [&](Rng& rng, std::vector<uint64_t>& c) {
        InstanceOutcome inst = basic_instance(g, seeds, model, rng);
        for (NodeId v = 0; v < g.n; ++v) c[size_t(v) * cols + inst.label[v]]++;
      });
  PredictionMatrix pred(g.n, seeds.num_labels, N);
  for (size_t j = 0; j < counts.size(); ++j) pred.p[j] = double(counts[j]) / double(N);
  return pred;
}

int64_t required_samples(double eps, double delta, int64_t n, int num_labels) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("required_samples: eps outside (0,1]");
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("required_samples: delta outside (0,1]");
  if (n < 1 || num_labels < 1)
    throw std::invalid_argument("required_samples: n and L must be positive");
  double bound = std::log(2.0 * double(n) * double(num_labels + 1) / delta) /
                 (2.0 * eps * eps);
  return int64_t(std::ceil(bound));
}

std::vector<Label> hard_labels(const PredictionMatrix& pred, const SeedSet* seeds) {
  Label fallback = 1;
  if (seeds && !seeds->empty()) {
    std::vector<int> cnt(size_t(pred.num_labels) + 1, 0);
    for (const auto& s : seeds->entries) cnt[s.label]++;
    for (Label l = 2; l <= pred.num_labels; ++l)
      if (cnt[l] > cnt[fallback]) fallback = l;
  }
  std::vector<Label> out(pred.n);
  int zero_rows = 0;
  for (NodeId v = 0; v < pred.n; ++v) {
    Label best = 0;
    double best_mass = 0.0;
    for (Label l = 1; l <= pred.num_labels; ++l) {
      double x = pred.at(v, l);
      if (x > best_mass) {  // strict: equal mass keeps the smaller label
        best_mass = x;
        best = l;
      }
    }
    if (best == 0) {
      best = fallback;
      ++zero_rows;
    }
    out[v] = best;
  }
  if (zero_rows > 0)
    std::cerr << "hard_labels: " << zero_rows << " row(s) without label mass, assigned "
              << fallback << "\n";
  return out;
}

std::vector<double> multilabel_infprop(const DirectedGraph& g,
                                       const std::vector<MultiSeed>& seeds, int num_labels,
                                       const DelayModel& model, int64_t N,
                                       uint64_t master_seed, int workers) {
  if (N < 1) throw std::invalid_argument("multilabel_infprop: N must be at least 1");
  if (seeds.empty()) throw std::invalid_argument("multilabel_infprop: empty seed set");
  for (const auto& s : seeds) {
    if (int(s.labels.size()) != num_labels)
      throw std::invalid_argument("multilabel_infprop: label vector size mismatch");
    for (uint8_t b : s.labels)
      if (b > 1) throw std::invalid_argument("multilabel_infprop: label vector not binary");
  }

  std::vector<SeedSet::Entry> entries;
  entries.reserve(seeds.size());
  for (const auto& s : seeds) entries.push_back({s.node, 1});
  SeedSet flat(entries, 1);
  std::unordered_map<NodeId, const MultiSeed*> by_node;
  for (const auto& s : seeds) by_node[s.node] = &s;

  auto counts = accumulate_counts(
      N, master_seed, workers, size_t(g.n) * num_labels,
      [&](Rng& rng, std::vector<uint64_t>& c) {
        InstanceOutcome inst = run_instance(g, flat, model, nullptr, rng);
        for (NodeId v = 0; v < g.n; ++v) {
          if (inst.ancestor[v] < 0) continue;
          const MultiSeed* ms = by_node.at(inst.ancestor[v]);
          for (int l = 0; l < num_labels; ++l)
            c[size_t(v) * num_labels + l] += ms->labels[l];
        }
      });
  std::vector<double> scores(size_t(g.n) * num_labels);
  for (size_t j = 0; j < scores.size(); ++j) scores[j] = double(counts[j]) / double(N);
  return scores;
}

}  // namespace infprop
