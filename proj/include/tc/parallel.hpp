#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace tc {

// Thread count from TC_THREADS, else the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("TC_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(chunk, begin, end) over `threads` contiguous chunks of [0, n).
// Chunk boundaries depend only on (n, threads); callers merge per-chunk
// results in chunk order.
template <class Fn>
void parallel_chunks(std::uint64_t n, unsigned threads, Fn&& fn) {
  threads = std::max(1u, threads);
  if (threads == 1 || n < 2 * threads) {
    fn(0u, std::uint64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned c = 0; c < threads; ++c) {
    const std::uint64_t b = n * c / threads, e = n * (c + 1) / threads;
    pool.emplace_back([&, c, b, e] {
      try {
        fn(c, b, e);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace tc
