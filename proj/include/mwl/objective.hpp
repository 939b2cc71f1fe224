#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mwl/types.hpp"

namespace mwl {

// Affine map x -> coeff.x + offset.
struct AffineFn {
  Vec coeff;
  double offset = 0.0;

  double operator()(const Vec& x) const { return dot(coeff, x) + offset; }
};

// One separable convex component of the cost nonlinearity. Tagged so scenario
// files can carry it; `quadratic` also carries a closed-form minimizer for the
// auxiliary subproblem, `neg_log1p` is solved by golden-section search.
struct ConvexTerm {
  enum class Kind { quadratic, neg_log1p };

  Kind kind = Kind::quadratic;
  double weight = 1.0;  // >= 0
  double shift = 0.0;   // quadratic only: weight * (g - shift)^2

  double eval(double g) const;
  double derivative(double g) const;

  bool has_closed_form() const { return kind == Kind::quadratic; }
  // argmin over [lo, hi] of V * eval(g) - z * g; only when has_closed_form()
  double closed_form_argmin(double v, double z, double lo, double hi) const;
};

struct ConstraintRow {
  AffineFn h;
  double b = 0.0;
};

// Cost decomposition f(x) = l(x) + ftilde(x restricted to the nonlinear
// index set), plus the linear inequality rows h_n(x) <= b_n.
struct ObjectiveSpec {
  AffineFn linear;                     // l(x); coeff sized M
  std::vector<int> nonlinear_indices;  // strictly increasing, 0-based
  std::vector<ConvexTerm> nonlinear;   // one term per nonlinear index
  std::vector<ConstraintRow> constraints;

  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int num_nonlinear() const { return static_cast<int>(nonlinear_indices.size()); }

  // ftilde(gamma), gamma indexed like nonlinear_indices
  double nonlinear_value(const Vec& gamma) const;
  // f(x) = l(x) + ftilde(x|nonlinear_indices), x sized M
  double f_value(const Vec& x) const;
  // entries of x at the nonlinear indices
  Vec restrict_nonlinear(const Vec& x) const;

  void validate(int penalty_dim) const;  // throws std::invalid_argument
};

}  // namespace mwl
