#include "infprop/types.hpp"

#include <cmath>
#include <unordered_set>

namespace infprop {

SeedSet::SeedSet(std::vector<Entry> e, int L) : entries(std::move(e)), num_labels(L) {
  if (L < 1) throw std::invalid_argument("SeedSet: num_labels must be at least 1");
  for (const auto& s : entries) {
    if (s.label < 1 || s.label > L)
      throw std::invalid_argument("SeedSet: label " + std::to_string(s.label) +
                                  " out of range 1.." + std::to_string(L));
  }
  std::unordered_set<NodeId> seen;
  for (const auto& s : entries) {
    if (!seen.insert(s.node).second)
      throw std::invalid_argument("SeedSet: duplicate seed node " + std::to_string(s.node));
  }
}

void SeedSet::validate(NodeId n) const {
  for (const auto& s : entries) {
    if (s.node < 0 || s.node >= n)
      throw std::invalid_argument("SeedSet: node " + std::to_string(s.node) +
                                  " outside 0.." + std::to_string(n - 1));
    if (s.label < 1 || s.label > num_labels)
      throw std::invalid_argument("SeedSet: label " + std::to_string(s.label) +
                                  " out of range");
  }
}

void PriorMatrix::set(NodeId v, Label l, double value) {
  if (v < 0 || v >= n || l < 1 || l > num_labels)
    throw std::invalid_argument("PriorMatrix: index out of range");
  if (!(value >= 0.0 && value <= 1.0))
    throw std::invalid_argument("PriorMatrix: prior " + std::to_string(value) +
                                " outside [0,1]");
  rho[size_t(v) * num_labels + (l - 1)] = value;
}

bool PriorMatrix::all_ones() const {
  for (double r : rho)
    if (r != 1.0) return false;
  return true;
}

void PredictionMatrix::validate(const SeedSet* seeds) const {
  const int cols = num_labels + 1;
  for (int v = 0; v < n; ++v) {
    double sum = 0.0;
    for (int l = 0; l < cols; ++l) {
      double x = p[size_t(v) * cols + l];
      if (!(x >= 0.0 && x <= 1.0))
        throw std::runtime_error("PredictionMatrix: entry outside [0,1] at row " +
                                 std::to_string(v));
      if (mc_instances > 0) {
        double scaled = x * double(mc_instances);
        if (std::abs(scaled - std::round(scaled)) > 1e-6)
          throw std::runtime_error("PredictionMatrix: entry at row " + std::to_string(v) +
                                   " is not a multiple of 1/N");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw std::runtime_error("PredictionMatrix: row " + std::to_string(v) +
                               " sums to " + std::to_string(sum));
  }
  if (seeds) {
    for (const auto& s : seeds->entries) {
      if (p[size_t(s.node) * cols + s.label] != 1.0)
        throw std::runtime_error("PredictionMatrix: seed row " + std::to_string(s.node) +
                                 " is not clamped to its label");
    }
  }
}

}  // namespace infprop
