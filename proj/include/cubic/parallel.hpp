#ifndef CUBIC_PARALLEL_HPP
#define CUBIC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace cubic {

/// Worker count from CUBIC_THREADS, else the hardware concurrency.
inline unsigned default_threads() {
  if (const char* env = std::getenv("CUBIC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(chunk) for chunk in [0, n_chunks) on up to `threads` workers.
/// Results must be written to per-chunk slots; callers reduce in chunk order,
/// which keeps floating-point reductions independent of the thread count.
template <class Fn>
void parallel_chunks(std::size_t n_chunks, unsigned threads, Fn&& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n_chunks, 1))));
  if (threads == 1) {
    for (std::size_t c = 0; c < n_chunks; ++c) fn(c);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < n_chunks; c = next++) {
        try {
          fn(c);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based stream: the generator for sample `index` depends only on
/// (seed, index), so samples can be drawn in any order on any worker.
inline std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  return std::mt19937_64(mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL)));
}

}  // namespace cubic

#endif  // CUBIC_PARALLEL_HPP
