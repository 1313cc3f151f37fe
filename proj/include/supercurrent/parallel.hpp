#ifndef SUPERCURRENT_PARALLEL_HPP
#define SUPERCURRENT_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace supercurrent {

// Runs fn(i) for i in [0, count) on up to nthreads workers (0 = hardware).
// The first exception is rethrown after all workers join.
inline void parallel_for(size_t count, const std::function<void(size_t)>& fn, int nthreads = 0) {
  if (count == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  size_t workers = nthreads > 0 ? (size_t)nthreads : (hw ? hw : 2);
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err = nullptr;
  std::mutex errmu;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(errmu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace supercurrent

#endif
