#pragma once

#include <cstdint>
#include <vector>

#include "infprop/dynamics.hpp"
#include "infprop/graph.hpp"
#include "infprop/rng.hpp"
#include "infprop/types.hpp"

namespace infprop {

// Single instance of the multi-source propagation: all seeds start at
// distance 0 with their labels; a min-queue expands nodes in distance order;
// expanding v samples each out-edge's delay lazily (at most once per edge)
// and relaxes alt = dist[v] + delay + penalty_u(label[v]); on improvement u
// adopts v's label, ancestor, and infector. Equal-alt ties are resolved by
// the per-instance tie hash (see rng.hpp), drawn as the first value of rng,
// so the outcome does not depend on queue pop order.
InstanceOutcome run_instance(const DirectedGraph& g, const SeedSet& seeds,
                             const DelayModel& model, const PenaltySource* penalties,
                             Rng& rng);

// Single instance of the two-phase variant: pre-samples the whole active
// graph (every edge, in edge-id order), runs one Dijkstra per seed, takes
// per-node minima, then assigns labels along minimizing predecessors with the
// same tie hash. Node-for-node equal to run_instance under a shared Replay
// table and rng seed. Discrete delays only; no penalties.
InstanceOutcome basic_instance(const DirectedGraph& g, const SeedSet& seeds,
                               const DelayModel& model, Rng& rng);

// Monte-Carlo aggregation of run_instance: f_vl = (1/N) * count of instances
// labeling v with l. Instance i draws its stream from (master_seed, i), and
// counts are integers, so the result is bit-identical for any worker count.
// workers = 0 reads INFPROP_WORKERS, falling back to hardware concurrency.
PredictionMatrix infprop(const DirectedGraph& g, const SeedSet& seeds,
                         const DelayModel& model, const PenaltySource* penalties,
                         int64_t N, uint64_t master_seed, int workers = 0);

// Monte-Carlo aggregation of basic_instance, same seeding scheme.
PredictionMatrix basic_infprop(const DirectedGraph& g, const SeedSet& seeds,
                               const DelayModel& model, int64_t N, uint64_t master_seed,
                               int workers = 0);

// Sample count N = ceil(ln(2n(L+1)/delta) / (2 eps^2)) guaranteeing
// max_{v,l} |f_hat - f| <= eps with probability at least 1 - delta.
int64_t required_samples(double eps, double delta, int64_t n, int num_labels);

// Argmax over label columns 1..L (null column excluded); ties go to the
// smallest label. Rows with no mass on 1..L fall back to the majority seed
// label when seeds are given (label 1 otherwise); such rows are counted and
// reported on stderr once per call.
std::vector<Label> hard_labels(const PredictionMatrix& pred, const SeedSet* seeds = nullptr);

// Seed carrying a binary label vector instead of a single label.
struct MultiSeed {
  NodeId node;
  std::vector<uint8_t> labels;  // size L, entries 0/1
};

// Per instance every node inherits its ancestor seed's whole label vector
// (zero vector when uninfected); returns the n x L average over N instances.
std::vector<double> multilabel_infprop(const DirectedGraph& g,
                                       const std::vector<MultiSeed>& seeds, int num_labels,
                                       const DelayModel& model, int64_t N,
                                       uint64_t master_seed, int workers = 0);

// Resolves the worker count: explicit value, else INFPROP_WORKERS, else
// hardware concurrency; always at least 1.
int resolve_workers(int workers);

}  // namespace infprop
