#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace regkit {

// Runs fn(i) for i in [0, count) on up to `workers` threads with static
// chunking. Callers write results into per-index slots and merge in index
// order, which keeps every result independent of the worker count.
template <class F>
void parallel_for(std::size_t count, int workers, F&& fn) {
  std::size_t w = static_cast<std::size_t>(std::max(1, workers));
  w = std::min(w, count);
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> threads;
  threads.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    threads.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += w) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace regkit
