#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace svps {

/// Runs index-addressed tasks over a thread pool. Results must be written
/// to pre-sized slots keyed by index so the outcome does not depend on the
/// worker count or on scheduling order.
class Executor {
 public:
  explicit Executor(unsigned workers = 0) : workers_(resolve(workers)) {}

  unsigned workers() const { return workers_; }

  /// Invokes fn(i) for i in [0, count). The first exception thrown by any
  /// task is rethrown here after all workers have stopped.
  void for_each(std::size_t count, const std::function<void(std::size_t)>& fn) const {
    if (count == 0) return;
    if (workers_ <= 1 || count == 1) {
      for (std::size_t i = 0; i < count; ++i) fn(i);
      return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    };

    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers_, count));
    std::vector<std::thread> threads;
    threads.reserve(n);
    for (unsigned t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
  }

 private:
  static unsigned resolve(unsigned workers) {
    if (workers != 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }

  unsigned workers_;
};

}  // namespace svps
