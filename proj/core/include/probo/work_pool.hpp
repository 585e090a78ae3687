#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace probo {

// Worker count for `requested` (0 = all available cores), never more than `count`.
inline std::size_t resolve_jobs(std::size_t requested, std::size_t count) {
  std::size_t jobs = requested;
  if (jobs == 0) jobs = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(jobs, count));
}

// Calls f(i) for every i in [0, count) on up to `jobs` threads. Callers write
// results into slot i, so the outcome does not depend on scheduling. The
// first exception thrown by f is rethrown after all workers have stopped.
template <typename F>
void parallel_for(std::size_t count, std::size_t jobs, F&& f) {
  if (count == 0) return;
  jobs = resolve_jobs(jobs, count);
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        while (!failed.load()) {
          const std::size_t i = next.fetch_add(1);
          if (i >= count) return;
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed.store(true);
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace probo
