#pragma once

#include <cstddef>
#include <vector>

namespace mwl::par {

// Runtime switch for the OpenMP kernels. Results are bitwise identical with
// the switch on or off: reductions are blocked with a fixed chunk width, so
// the summation order never depends on the thread count.
bool enabled();
void set_enabled(bool on);
int thread_count();

inline constexpr std::size_t kChunk = 1024;

namespace detail {
std::size_t chunk_count(std::size_t n);
}

// Serial reference implementations. The parallel kernels below must agree
// with these bit for bit; tests/test_parallel.cpp holds them to that.
template <class Fn>
double sum_blocked_serial(std::size_t n, Fn&& fn) {
  const std::size_t chunks = detail::chunk_count(n);
  double total = 0.0;
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    double part = 0.0;
    for (std::size_t i = lo; i < hi; ++i) part += fn(i);
    total += part;
  }
  return total;
}

template <class Fn>
void for_each_serial(std::size_t n, Fn&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <class Fn>
double sum_blocked(std::size_t n, Fn&& fn) {
  if (!enabled() || n < 2 * kChunk) return sum_blocked_serial(n, fn);
  const std::size_t chunks = detail::chunk_count(n);
  std::vector<double> part(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
    const std::size_t hi = lo + kChunk < n ? lo + kChunk : n;
    double p = 0.0;
    for (std::size_t i = lo; i < hi; ++i) p += fn(i);
    part[static_cast<std::size_t>(c)] = p;
  }
  double total = 0.0;
  for (double p : part) total += p;
  return total;
}

// Parallel map over disjoint indices; fn(i) must only touch state owned by i.
template <class Fn>
void for_each(std::size_t n, Fn&& fn) {
  if (!enabled() || n < 2) {
    for_each_serial(n, fn);
    return;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    fn(static_cast<std::size_t>(i));
  }
}

}  // namespace mwl::par
