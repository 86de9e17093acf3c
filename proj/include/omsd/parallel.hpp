#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace omsd {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers with a static
/// block partition. Work items must write only to their own slots; the first
/// exception (lowest worker index) is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::int64_t count, unsigned threads, Fn&& fn) {
  if (count <= 0) return;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::int64_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      const std::int64_t begin = count * w / workers;
      const std::int64_t end = count * (w + 1) / workers;
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace omsd
