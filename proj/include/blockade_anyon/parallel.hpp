#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace blockade_anyon {

// Worker count: hardware concurrency, capped by BLOCKADE_ANYON_THREADS when set.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("BLOCKADE_ANYON_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

// Splits [begin, end) into contiguous chunks, one per worker. body(lo, hi) must only
// write to state owned by its chunk; the result is then independent of scheduling.
template <typename Body>
void parallel_for(std::size_t begin, std::size_t end, Body&& body,
                  std::size_t min_chunk = 4096) {
  if (end <= begin) return;
  const std::size_t total = end - begin;
  const std::size_t workers =
      std::min<std::size_t>(thread_count(), (total + min_chunk - 1) / min_chunk);
  if (workers <= 1) {
    body(begin, end);
    return;
  }
  const std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = begin + w * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        body(lo, hi);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace blockade_anyon
