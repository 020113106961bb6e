#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "multisym/classify.hpp"

namespace multisym {

/// Deterministic 64-bit generator; identical streams on every platform.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  uint64_t below(uint64_t n) { return next() % n; }
};

inline uint64_t subseed(uint64_t seed, uint64_t item) {
  SplitMix64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (item + 1)));
  return rng.next();
}

/// Product of 12 integer shears and diagonal sign maps: exactly invertible
/// with determinant +-1, small entries.
inline LinMap sample_unimodular(uint64_t seed) {
  SplitMix64 rng(seed);
  LinMap g = LinMap::identity();
  for (int f = 0; f < 12; ++f) {
    LinMap s = LinMap::identity();
    if (rng.below(4) < 3) {
      size_t i = rng.below(6);
      size_t j = rng.below(5);
      if (j >= i) ++j;
      static const int offsets[4] = {-2, -1, 1, 2};
      s.at(i, j) = Scalar(offsets[rng.below(4)]);
    } else {
      for (size_t t = 0; t < kDim; ++t)
        if (rng.below(2) == 1) s.at(t, t) = Scalar(-1);
    }
    g = g * s;
  }
  return g;
}

/// Simple index-parallel map; results land at their own index, so output
/// is independent of thread count and scheduling.
template <typename Fn>
void parallel_for(size_t n, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned workers = std::min<size_t>(jobs, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<size_t> cursor{0};
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

/// Seeded forms on one orbit: pullbacks of the representative by
/// independent per-item unimodular maps.
inline std::vector<KForm> sample_orbit(OrbitType orbit, uint64_t seed, size_t count,
                                       unsigned jobs = 1) {
  if (count < 1) throw PreconditionError("sample count must be at least 1");
  KForm rep = representative(orbit);
  std::vector<KForm> out(count, KForm(3));
  parallel_for(count, jobs, [&](size_t i) {
    out[i] = pullback(sample_unimodular(subseed(seed, i)), rep);
  });
  return out;
}

}  // namespace multisym
