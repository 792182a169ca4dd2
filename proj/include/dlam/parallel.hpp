#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dlam {

// Number of worker threads used by parallel_for; 0 means hardware concurrency.
inline unsigned& worker_count() {
  static unsigned n = 0;
  return n;
}

// Runs fn(i) for i in [0, n) over static contiguous chunks. Results must be written to
// per-index slots so the caller can reduce in a fixed order.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_chunk = 64) {
  unsigned hw = worker_count() ? worker_count() : std::max(1u, std::thread::hardware_concurrency());
  std::size_t chunks = std::min<std::size_t>(hw, (n + min_chunk - 1) / min_chunk);
  if (chunks <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  for (std::size_t c = 0; c < chunks; ++c) {
    std::size_t lo = n * c / chunks, hi = n * (c + 1) / chunks;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace dlam
