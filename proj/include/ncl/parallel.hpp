#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace ncl {

/// Worker cap from NCL_THREADS, defaulting to the hardware count.
inline unsigned worker_count() {
  if (const char* env = std::getenv("NCL_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(block) for block = 0..nblocks-1 across workers. Each block writes its
/// own slot, so results do not depend on the worker count or schedule.
template <typename Fn>
void for_each_block(std::size_t nblocks, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), nblocks);
  if (workers <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= nblocks) return;
        fn(b);
      }
    });
  }
  for (auto& t : pool) t.join();
}

/// Compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace ncl
