#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace cosym {

// Worker cap: COSYM_THREADS if set (>=1), otherwise min(hardware, 8).
inline int max_threads() {
  if (const char* env = std::getenv("COSYM_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::min(hw == 0 ? 1u : hw, 8u));
}

inline int parallel_slots(std::int64_t n) {
  return static_cast<int>(std::min<std::int64_t>(max_threads(), std::max<std::int64_t>(n, 1)));
}

// Runs body(i, slot) for i in [0, n); each fixed contiguous chunk of indices
// is owned by one worker and reports the same slot in [0, parallel_slots(n)).
// Callers keep per-index writes disjoint, accumulate per-slot, and reduce with
// order-independent operations (max, counts) so results do not depend on the
// worker count.
template <typename Body>
void parallel_for(std::int64_t n, const Body& body) {
  if (n <= 0) return;
  const int workers = parallel_slots(n);
  const std::int64_t chunk = (n + workers - 1) / workers;
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, w, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i, w);
    });
  }
  for (auto& t : pool) t.join();
}

// Max-reduction over [0, n) of a scalar function of the index.
template <typename F>
double parallel_max(std::int64_t n, const F& f) {
  if (n <= 0) return 0.0;
  std::vector<double> acc(parallel_slots(n), 0.0);
  parallel_for(n, [&](std::int64_t i, int slot) {
    acc[slot] = std::max(acc[slot], f(i));
  });
  double out = acc[0];
  for (double a : acc) out = std::max(out, a);
  return out;
}

}  // namespace cosym
