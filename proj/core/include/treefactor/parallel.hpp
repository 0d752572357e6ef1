#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace treefactor {

/// Global cap on worker threads used by parallel loops (CLI --threads).
/// 0 means "use hardware concurrency".
inline std::atomic<int>& worker_cap() {
  static std::atomic<int> cap{0};
  return cap;
}

inline int effective_workers(std::size_t items) {
  int cap = worker_cap().load();
  if (cap <= 0) cap = static_cast<int>(std::thread::hardware_concurrency());
  if (cap <= 0) cap = 1;
  return static_cast<int>(std::min<std::size_t>(cap, std::max<std::size_t>(items, 1)));
}

/// Runs fn(i) for i in [0, n). Each index is processed exactly once; fn must
/// only write state owned by index i, so the result is identical for any
/// worker count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const int workers = effective_workers(n);
  if (workers <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace treefactor
