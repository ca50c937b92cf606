#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psl2 {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs work(b) for every block b in [0, n_blocks) on up to `threads` workers.
// Blocks are claimed in ascending order; callers store per-block results and
// merge them by index, so output never depends on the thread count. The first
// exception thrown by any block is rethrown after all workers stop.
template <typename Work>
void for_each_block(std::size_t n_blocks, unsigned threads, Work&& work) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n_blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) work(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t b; !failed && (b = next.fetch_add(1)) < n_blocks;) {
      try {
        work(b);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace psl2
