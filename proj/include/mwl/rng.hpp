#pragma once

#include <cstdint>
#include <random>

namespace mwl {

// splitmix64 finalizer; used to derive independent streams from (seed, index).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic uniform stream. All randomness in the library flows through
// this class so that a run is a pure function of its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng derived(std::uint64_t seed, std::uint64_t stream) {
    return Rng(mix64(seed ^ mix64(stream)));
  }

  // uniform in [0, 1) with 53-bit resolution
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // uniform over {0, ..., n-1}; a singleton draw consumes no variate, which
  // keeps variate streams aligned across controllers when K = 1
  int uniform_index(int n) {
    if (n <= 1) return 0;
    int v = static_cast<int>(uniform01() * static_cast<double>(n));
    return v >= n ? n - 1 : v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mwl
