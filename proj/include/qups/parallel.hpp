#pragma once

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qups {

// Worker count: QUPS_THREADS env var if set, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("QUPS_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// Deterministic static partition of [0, n) into contiguous chunks, one per
// worker.  Results must be merged by chunk index by the caller when order
// matters; the partition itself does not depend on the thread count observed
// at runtime beyond the chunk boundaries.
template <class Fn>
void parallel_for(std::int64_t n, Fn&& body) {
  int workers = thread_count();
  if (n <= 0) return;
  if (workers <= 1 || n < 2 * workers) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qups
