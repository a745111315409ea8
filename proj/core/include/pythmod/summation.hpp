#pragma once

// Reproducible floating-point reductions. Work is cut into a fixed number of
// chunks that depends only on the problem, never on the thread count, and the
// per-chunk partials are combined by pairwise summation in chunk order, so
// results are bit-identical for any number of workers.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

namespace pythmod {

template <class T>
T pairwise_sum(std::span<const T> values) {
  if (values.empty()) return T{};
  if (values.size() <= 8) {
    T acc = values[0];
    for (std::size_t i = 1; i < values.size(); ++i) acc += values[i];
    return acc;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Evaluates body(chunk) for chunk in [0, chunk_count) on up to `threads`
// workers (0 = all cores) and returns the pairwise sum of the results.
template <class T, class Body>
T deterministic_reduce(std::size_t chunk_count, unsigned threads, Body&& body) {
  std::vector<T> partial(chunk_count, T{});
  const unsigned workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(chunk_count, 1));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunk_count; ++c) partial[c] = body(c);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next.fetch_add(1); c < chunk_count; c = next.fetch_add(1)) partial[c] = body(c);
      });
    }
  }
  return pairwise_sum(std::span<const T>(partial));
}

}  // namespace pythmod
