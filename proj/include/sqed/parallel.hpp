#ifndef SQED_PARALLEL_HPP
#define SQED_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sqed {

// Runs body(i) for i in [0, n) on `jobs` threads. Work is handed out in
// fixed-size chunks; results must be written into per-index slots by the
// caller so the outcome is independent of scheduling. When `stop_at` is
// set, indices past the smallest index published through it are skipped
// (best effort), which keeps early-exit searches cheap AND deterministic:
// callers must still reduce over per-index results, not completion order.
class StopIndex {
 public:
  void propose(std::size_t idx) {
    std::size_t cur = best_.load(std::memory_order_relaxed);
    while (idx < cur &&
           !best_.compare_exchange_weak(cur, idx, std::memory_order_relaxed)) {
    }
  }
  std::size_t get() const { return best_.load(std::memory_order_relaxed); }

 private:
  std::atomic<std::size_t> best_{static_cast<std::size_t>(-1)};
};

template <typename Body>
void parallel_for(std::size_t n, unsigned jobs, Body body,
                  const StopIndex* stop_at = nullptr,
                  std::size_t chunk = 256) {
  if (jobs <= 1 || n < chunk * 2) {
    for (std::size_t i = 0; i < n; ++i) {
      if (stop_at && i > stop_at->get()) return;
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&]() {
    for (;;) {
      std::size_t lo = next.fetch_add(chunk);
      if (lo >= n) return;
      if (stop_at && lo > stop_at->get()) return;
      std::size_t hi = lo + chunk < n ? lo + chunk : n;
      try {
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace sqed

#endif
