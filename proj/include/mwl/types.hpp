#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mwl {

using Vec = std::vector<double>;
using SlotIndex = long long;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace mwl
