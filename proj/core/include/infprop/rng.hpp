#pragma once

#include <cmath>
#include <cstdint>

#include "infprop/types.hpp"

namespace infprop {

// Finalizer with full avalanche; bijective on 64 bits.
inline uint64_t mix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

struct SplitMix64 {
  uint64_t state;
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    return mix64(z);
  }
};

// xoshiro256++; hand-rolled so streams are bit-stable across platforms and
// standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& w : s_) w = sm.next();
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0,1), 53-bit resolution.
  double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Exponential with the given rate, strictly positive.
  double exponential(double rate) {
    double u = 1.0 - next_double();  // (0,1]
    return -std::log(u) / rate;
  }

  // Uniform integer in [0, bound); bound >= 1. Rejection keeps it unbiased.
  uint64_t next_below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Stream for instance i of a run keyed by master_seed. Streams for distinct
// indices are independent regardless of the order they are consumed in, which
// is what makes parallel aggregation order-invariant.
inline Rng derive_stream(uint64_t master_seed, uint64_t index) {
  return Rng(mix64(master_seed ^ mix64(index + 0x9e3779b97f4a7c15ull)));
}

// Per-instance tie-break hash. During relaxation, an incumbent shortest-path
// predecessor u of node v is replaced by an equally good candidate u' iff
// tie_hash(key, v, u') < tie_hash(key, v, u). With key drawn fresh per
// instance this realizes a uniform independent choice among minimizing
// predecessors, and makes the choice independent of processing order.
inline uint64_t tie_hash(uint64_t key, NodeId v, NodeId u) {
  return mix64(key ^ (uint64_t(uint32_t(v)) << 32) ^ uint64_t(uint32_t(u)));
}

}  // namespace infprop
