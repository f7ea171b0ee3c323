#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lrr {

/// Worker count used by internal loops. Defaults to the LRR_NUM_THREADS
/// environment variable, or 1 when unset. Affects speed only: every parallel
/// loop writes disjoint outputs computed in a fixed order.
int num_threads();
void set_num_threads(int threads);

namespace detail {
/// Set on worker threads so nested parallel_for calls run serially.
inline thread_local bool in_worker = false;
}  // namespace detail

/// Calls body(i) for i in [0, count), splitting the range into contiguous
/// chunks, one per worker. The first exception thrown by any worker is
/// rethrown on the calling thread after all workers have joined.
template <class Body>
void parallel_for(std::ptrdiff_t count, Body&& body) {
  const int workers = static_cast<int>(std::min<std::ptrdiff_t>(num_threads(), count));
  if (workers <= 1 || detail::in_worker) {
    for (std::ptrdiff_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  const std::ptrdiff_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::ptrdiff_t lo = w * chunk;
    const std::ptrdiff_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body, &err = errors[w]] {
      detail::in_worker = true;
      try {
        for (std::ptrdiff_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace lrr
