#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ordolex {

// Applies fn to every item, bounded by `jobs` workers (0 = hardware
// concurrency). Results keep input order; the first worker exception is
// rethrown after all threads join.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, Fn&& fn, unsigned jobs = 0)
    -> std::vector<decltype(fn(items.front()))> {
  using Result = decltype(fn(items.front()));
  std::vector<Result> results(items.size());
  if (items.empty()) return results;

  unsigned hw = std::thread::hardware_concurrency();
  if (jobs == 0) jobs = hw ? hw : 1;
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(items.size()));

  if (jobs <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = fn(items[i]);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) break;
      try {
        results[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        break;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  pool.clear();  // join

  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace ordolex
