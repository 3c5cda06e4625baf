#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace slimlat {

/// Runs fn(i) for i in [0, count) across `jobs` threads (0 = hardware).
/// Work is claimed through a shared counter; callers keep results in
/// index-addressed slots so the outcome is order-independent.
inline void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  int workers = std::min(jobs, count);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace slimlat
