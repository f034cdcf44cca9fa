#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mjr {

// Runs fn(i) for i in [0, count) on `threads` workers. Callers get
// thread-count-independent results by writing to index i of a preallocated
// buffer and folding sequentially afterwards.
template <class F>
void parallel_for(std::uint64_t count, unsigned threads, F&& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace mjr
