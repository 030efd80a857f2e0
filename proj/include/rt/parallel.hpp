#pragma once

#include <algorithm>
#include <atomic>
#include <complex>
#include <functional>
#include <thread>
#include <vector>

namespace rt {

namespace detail {
inline std::atomic<int>& thread_count_slot() {
  static std::atomic<int> n{1};
  return n;
}
}  // namespace detail

inline int thread_count() { return detail::thread_count_slot().load(); }

inline void set_thread_count(int n) {
  detail::thread_count_slot().store(std::clamp(n, 1, 256));
}

// Sum of fn(i) over i in [0, n).  The range is cut into fixed-size chunks
// (independent of the worker count), every chunk is accumulated left to
// right, and the chunk partials are combined in chunk order, so the result
// is bit-for-bit identical for any thread count.
inline std::complex<double> parallel_sum(
    long long n, const std::function<std::complex<double>(long long)>& fn) {
  if (n <= 0) return {0.0, 0.0};
  constexpr long long kChunk = 1024;
  const long long chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::complex<double>> partial(static_cast<size_t>(chunks),
                                            {0.0, 0.0});
  const int workers =
      static_cast<int>(std::min<long long>(thread_count(), chunks));
  auto run = [&](std::atomic<long long>& next) {
    for (long long c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
      std::complex<double> acc{0.0, 0.0};
      const long long lo = c * kChunk;
      const long long hi = std::min(n, lo + kChunk);
      for (long long i = lo; i < hi; ++i) acc += fn(i);
      partial[static_cast<size_t>(c)] = acc;
    }
  };
  std::atomic<long long> next{0};
  if (workers <= 1) {
    run(next);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back([&] { run(next); });
    for (auto& th : pool) th.join();
  }
  std::complex<double> total{0.0, 0.0};
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace rt
