#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace semitherm {

// 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs f(i) for i in [0, count) over a static partition. The first
// exception thrown by any worker is rethrown on the caller.
template <class F>
void parallel_for(std::size_t count, F&& f) {
  const unsigned t = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  if (t <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += t) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace semitherm
