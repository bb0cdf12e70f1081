#include "bicomb/rng.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace bicomb {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(std::min(hw, 8u));
}

SweepResult sweep_max(std::uint64_t n, int threads,
                      const std::function<double(std::uint64_t)>& fn,
                      bool keep_values) {
  SweepResult out;
  out.count = n;
  if (n == 0) {
    out.worst = 0.0;
    return out;
  }
  if (keep_values) out.values.assign(n, 0.0);

  int nt = resolve_threads(threads);
  if (static_cast<std::uint64_t>(nt) > n) nt = static_cast<int>(n);

  std::vector<double> worst(nt, -std::numeric_limits<double>::infinity());
  std::vector<std::uint64_t> worst_idx(nt, 0);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(nt);

  auto body = [&](int tid) {
    // Fixed block split: indices [lo, hi) for thread tid.
    std::uint64_t lo = n * tid / nt;
    std::uint64_t hi = n * (tid + 1) / nt;
    try {
      for (std::uint64_t i = lo; i < hi; ++i) {
        double v = fn(i);
        if (keep_values) out.values[i] = v;
        if (v > worst[tid]) {
          worst[tid] = v;
          worst_idx[tid] = i;
        }
      }
    } catch (...) {
      errors[tid] = std::current_exception();
    }
  };

  if (nt == 1) {
    body(0);
  } else {
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) pool.emplace_back(body, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (int t = 0; t < nt; ++t) {
    if (worst[t] > out.worst ||
        (worst[t] == out.worst && worst_idx[t] < out.worst_index)) {
      out.worst = worst[t];
      out.worst_index = worst_idx[t];
    }
  }
  return out;
}

}  // namespace bicomb
