#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace chabauty {

// Process-wide worker count (the CLI's --jobs). 1 disables threading; results
// are index-assembled so the outcome does not depend on this setting.
int parallel_jobs();
void set_parallel_jobs(int jobs);

namespace detail {
inline thread_local bool in_parallel_worker = false;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const int jobs = std::min<int>(parallel_jobs(), static_cast<int>(n));
  // nested regions run serially to avoid thread oversubscription
  if (jobs <= 1 || n < 2 || detail::in_parallel_worker) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&]() {
      detail::in_parallel_worker = true;
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace chabauty
