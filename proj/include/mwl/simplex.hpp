#pragma once

#include <vector>

#include "mwl/types.hpp"

namespace mwl {

// Dense linear program in the form
//   minimize    cost . x
//   subject to  eq_rows x  = eq_rhs
//               ub_rows x <= ub_rhs
//               x >= 0
struct LinearProgram {
  int num_vars = 0;
  std::vector<Vec> eq_rows;
  Vec eq_rhs;
  std::vector<Vec> ub_rows;
  Vec ub_rhs;
  Vec cost;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Vec x;
};

// Two-phase tableau simplex with Bland's pivoting rule. Sized for the small
// dense programs this project builds (tens of rows, hundreds of columns).
LpResult solve_lp(const LinearProgram& lp, double eps = 1e-9);

}  // namespace mwl
