#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gwpt {

inline unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(ctx, i) for i in [0, n) on a transient worker pool. Each worker
// builds one context via make_ctx (FFT plans, scratch buffers). Writers own
// disjoint output slots indexed by i, so results do not depend on scheduling.
// The first exception is rethrown on the caller thread.
template <class MakeCtx, class Fn>
void parallel_for_ctx(std::size_t n, unsigned threads, MakeCtx&& make_ctx, Fn&& fn) {
  unsigned nw = worker_count(threads);
  if (nw > n) nw = n > 0 ? static_cast<unsigned>(n) : 1;
  if (nw <= 1) {
    auto ctx = make_ctx();
    for (std::size_t i = 0; i < n; ++i) fn(ctx, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto work = [&]() {
    try {
      auto ctx = make_ctx();
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) break;
        fn(ctx, i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (unsigned t = 0; t < nw; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

struct NoCtx {};

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  parallel_for_ctx(n, threads, [] { return NoCtx{}; },
                   [&](NoCtx&, std::size_t i) { fn(i); });
}

}  // namespace gwpt
