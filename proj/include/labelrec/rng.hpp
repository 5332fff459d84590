#pragma once

#include <cstdint>
#include <initializer_list>

// Counter-based deterministic randomness. Every random decision in the
// library is keyed by (seed, stream tag, indices...) instead of by draw
// order, so sampling is reproducible regardless of evaluation order or
// thread count.

namespace labelrec::rng {

// Stream tags keep independent random decisions on disjoint key spaces.
enum StreamTag : uint64_t {
  kGroundTruth = 0x01,
  kEdgeObs = 0x02,
  kVertexObs = 0x03,
  kShortcut = 0x04,
  kTrial = 0x05,
};

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Hash a key tuple into a single 64-bit value.
inline uint64_t mix(std::initializer_list<uint64_t> keys) {
  uint64_t h = 0x8e1f2ab54c1e9d37ULL;
  for (uint64_t k : keys) {
    h = splitmix64(h ^ k);
  }
  return h;
}

// Uniform double in [0, 1) from a key tuple.
inline double unit(std::initializer_list<uint64_t> keys) {
  return static_cast<double>(mix(keys) >> 11) * 0x1.0p-53;
}

inline bool bernoulli(double prob, std::initializer_list<uint64_t> keys) {
  return unit(keys) < prob;
}

// Uniform label in {-1, +1}.
inline int pm_one(std::initializer_list<uint64_t> keys) {
  return (mix(keys) & 1) ? 1 : -1;
}

}  // namespace labelrec::rng
