#ifndef SNNLAB_SRC_PARALLEL_H_
#define SNNLAB_SRC_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace snnlab::internal {

inline int ResolveThreads(int requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Callers write
// results into per-index slots and reduce afterwards in index order, which
// keeps results independent of scheduling. The first exception is rethrown.
template <class Fn>
void ParallelFor(std::size_t n, int threads, Fn&& fn) {
  const int workers = static_cast<int>(std::min<std::size_t>(ResolveThreads(threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace snnlab::internal

#endif  // SNNLAB_SRC_PARALLEL_H_
