#include <doctest.h>

#include <cmath>
#include <vector>

#include "mwl/parallel.hpp"
#include "mwl/rng.hpp"

using namespace mwl;

TEST_CASE("blocked sum matches serial reference bitwise") {
  for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{7}, std::size_t{1024},
                        std::size_t{1025}, std::size_t{50000}}) {
    auto fn = [&](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)) + 1.0 / (1.0 + i); };
    const double serial = par::sum_blocked_serial(n, fn);
    par::set_enabled(true);
    const double parallel = par::sum_blocked(n, fn);
    par::set_enabled(false);
    const double disabled = par::sum_blocked(n, fn);
    par::set_enabled(true);
    CHECK(serial == parallel);
    CHECK(serial == disabled);
  }
}

TEST_CASE("for_each touches every index exactly once") {
  std::vector<int> hits(10000, 0);
  par::for_each(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

TEST_CASE("derived rng streams do not depend on evaluation order") {
  std::vector<double> a(64), b(64);
  par::for_each(a.size(), [&](std::size_t i) { a[i] = Rng::derived(42, i).uniform01(); });
  par::for_each_serial(b.size(), [&](std::size_t i) { b[i] = Rng::derived(42, i).uniform01(); });
  CHECK(a == b);
}

TEST_CASE("uniform_index consumes no variate for singleton draws") {
  Rng r1(7), r2(7);
  (void)r1.uniform_index(1);
  CHECK(r1.uniform01() == r2.uniform01());
}
