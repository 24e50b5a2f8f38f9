// Copyright 2026 The lfgc Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef LFGC_PARALLEL_HPP
#define LFGC_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace lfgc {

/// Runs fn(0..n-1) across `workers` threads pulling indices from a shared
/// counter; workers <= 1 runs inline. The first exception thrown by any
/// item is rethrown after all threads finish.
inline void parallel_for(size_t n, int workers,
                         const std::function<void(size_t)>& fn) {
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::mutex mu;
  std::exception_ptr error;
  auto run = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const size_t n_threads = std::min(static_cast<size_t>(workers), n);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(run);
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lfgc

#endif
