#include "infprop/synth.hpp"

#include <stdexcept>

namespace infprop {

void SynthParams::validate() const {
  if (communities < 1 || communities > 30)
    throw std::invalid_argument("synth: communities outside 1..30");
  if (size < 1) throw std::invalid_argument("synth: community size < 1");
  if (overlap < 0 || overlap > size)
    throw std::invalid_argument("synth: overlap outside 0..size");
  if (!(noise >= 0.0 && noise <= 1.0))
    throw std::invalid_argument("synth: noise outside [0,1]");
  if (!(intra >= 0.0 && intra <= 1.0))
    throw std::invalid_argument("synth: intra outside [0,1]");
  if (communities == 1 && overlap > 0)
    throw std::invalid_argument("synth: overlap needs at least 2 communities");
}

SynthResult synth_community(const SynthParams& params, Rng& rng) {
  params.validate();
  const int C = params.communities, size = params.size;
  const int n = C * size;

  // Draw order is fixed: per-community overlap members and their secondary
  // community first, then one uniform per node pair in lexicographic order.
  std::vector<uint32_t> member(n, 0);
  for (int v = 0; v < n; ++v) member[v] = 1u << (v / size);
  for (int c = 0; c < C; ++c) {
    std::vector<int> local(size);
    for (int i = 0; i < size; ++i) local[i] = c * size + i;
    for (int t = 0; t < params.overlap; ++t) {
      int j = t + int(rng.next_below(uint64_t(size - t)));
      std::swap(local[t], local[j]);
      int other = int(rng.next_below(uint64_t(C - 1)));
      if (other >= c) ++other;
      member[local[t]] |= 1u << other;
    }
  }

  std::vector<EdgeInput> arcs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double prob = (member[i] & member[j]) ? params.intra : params.noise;
      if (rng.bernoulli(prob)) {
        arcs.push_back({i, j, 1.0});
        arcs.push_back({j, i, 1.0});
      }
    }
  }

  SynthResult res;
  res.graph = build_graph(n, arcs, false);
  res.labels.resize(n);
  for (int v = 0; v < n; ++v) res.labels[v] = Label(v / size + 1);
  return res;
}

}  // namespace infprop
