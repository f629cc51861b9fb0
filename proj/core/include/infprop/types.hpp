#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace infprop {

using NodeId = int32_t;
using Label = int32_t;  // 1..L; 0 is the null/uninfected state
using EdgeId = int32_t;

inline constexpr Label kNullLabel = 0;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Labeled seed nodes. Labels live in 1..num_labels; node ids must be distinct.
struct SeedSet {
  struct Entry {
    NodeId node;
    Label label;
  };
  std::vector<Entry> entries;
  int num_labels = 0;

  SeedSet() = default;
  SeedSet(std::vector<Entry> e, int L);

  size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  void validate(NodeId n) const;  // throws on out-of-range node/label or duplicates
};

// Per-node per-label priors in (0,1]; absent entries mean 1 (no penalty).
// A zero entry is accepted but makes the label unreachable for that node.
struct PriorMatrix {
  int n = 0;
  int num_labels = 0;
  std::vector<double> rho;  // n x L, row-major

  PriorMatrix() = default;
  PriorMatrix(int n_, int L) : n(n_), num_labels(L), rho(size_t(n_) * L, 1.0) {}

  double at(NodeId v, Label l) const { return rho[size_t(v) * num_labels + (l - 1)]; }
  void set(NodeId v, Label l, double value);
  bool all_ones() const;
};

// Row-stochastic n x (L+1) matrix of per-node label probabilities.
// Column 0 carries the never-infected mass. mc_instances is the number of
// Monte-Carlo instances aggregated; 0 marks an analytically computed matrix
// whose entries need not be multiples of 1/N.
struct PredictionMatrix {
  int n = 0;
  int num_labels = 0;
  int64_t mc_instances = 0;
  std::vector<double> p;  // n x (L+1), row-major

  PredictionMatrix() = default;
  PredictionMatrix(int n_, int L, int64_t N = 0)
      : n(n_), num_labels(L), mc_instances(N), p(size_t(n_) * (L + 1), 0.0) {}

  double at(NodeId v, Label l) const { return p[size_t(v) * (num_labels + 1) + l]; }
  double& at(NodeId v, Label l) { return p[size_t(v) * (num_labels + 1) + l]; }
  const double* row(NodeId v) const { return &p[size_t(v) * (num_labels + 1)]; }

  // Checks row sums, entry ranges, clamped seed rows, and (when mc_instances
  // is set) that every entry is an integer multiple of 1/N.
  void validate(const SeedSet* seeds = nullptr) const;
};

// One realized infection instance. Conventions:
//   label(v) == 0  <=>  dist(v) == inf  <=>  ancestor(v) == -1
//   infector(v) == v for seeds and for uninfected nodes
struct InstanceOutcome {
  std::vector<Label> label;
  std::vector<double> dist;
  std::vector<NodeId> ancestor;
  std::vector<NodeId> infector;

  explicit InstanceOutcome(int n = 0)
      : label(n, kNullLabel), dist(n, kInf), ancestor(n, -1), infector(n) {
    for (int v = 0; v < n; ++v) infector[v] = v;
  }
  int n() const { return int(label.size()); }
};

}  // namespace infprop
