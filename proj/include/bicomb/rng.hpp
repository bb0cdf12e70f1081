#pragma once

#include <cstdint>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace bicomb {

// splitmix64. Every sampled instance in a sweep draws from its own stream
// keyed by (seed, index), so results do not depend on thread count or on
// how work is chunked.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}
  Rng(std::uint64_t seed, std::uint64_t index)
      : s_(mix(mix(seed + 0x9e3779b97f4a7c15ull) ^ mix(index + 0xbf58476d1ce4e5b9ull))) {}

  std::uint64_t next() {
    s_ += 0x9e3779b97f4a7c15ull;
    return mix(s_);
  }

  // [0,1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

  double normal() {
    // Box-Muller, uncached; two draws per call keeps streams simple.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    z ^= z >> 31;
    return z;
  }
  std::uint64_t s_;
};

// Result of a parallel sweep: the largest per-sample value wins, ties broken
// by the smallest index so the winning witness is thread-count independent.
struct SweepResult {
  double worst = -std::numeric_limits<double>::infinity();
  std::uint64_t worst_index = 0;
  std::uint64_t count = 0;
  std::vector<double> values;  // per-index, only if requested
};

SweepResult sweep_max(std::uint64_t n, int threads,
                      const std::function<double(std::uint64_t)>& fn,
                      bool keep_values = false);

int resolve_threads(int requested);

}  // namespace bicomb
