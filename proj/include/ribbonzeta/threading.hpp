#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ribbonzeta {

inline unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RIBBONZETA_THREADS")) {
    long v = std::atol(env);
    if (v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
  }
  return hw;
}

// Runs fn(i) for i in [0, n). Output ordering is the caller's problem:
// fn writes into slot i, so results are deterministic regardless of
// scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = 0) {
  if (threads == 0) threads = worker_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> counter{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = counter.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace ribbonzeta
