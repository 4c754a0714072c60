#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bohrwalk::detail {

// Runs body(block) for every block in [0, blocks) on up to `workers` threads.
// Blocks are claimed dynamically; callers keep results per block so the
// outcome never depends on scheduling.
template <class Body>
void parallel_blocks(std::size_t blocks, int workers, Body&& body) {
  const std::size_t threads = std::min<std::size_t>(blocks, static_cast<std::size_t>(std::max(1, workers)));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      try {
        for (std::size_t b = next++; b < blocks; b = next++) body(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace bohrwalk::detail
