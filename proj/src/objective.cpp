#include "mwl/objective.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwl {

double ConvexTerm::eval(double g) const {
  switch (kind) {
    case Kind::quadratic: {
      const double d = g - shift;
      return weight * d * d;
    }
    case Kind::neg_log1p:
      return -weight * std::log1p(g);
  }
  return 0.0;
}

double ConvexTerm::derivative(double g) const {
  switch (kind) {
    case Kind::quadratic:
      return 2.0 * weight * (g - shift);
    case Kind::neg_log1p:
      return -weight / (1.0 + g);
  }
  return 0.0;
}

double ConvexTerm::closed_form_argmin(double v, double z, double lo, double hi) const {
  if (kind != Kind::quadratic) throw std::logic_error("closed_form_argmin: no closed form for this term");
  // minimize v*weight*(g-shift)^2 - z*g: stationary at g = shift + z/(2*v*weight)
  double g;
  if (v * weight <= 0.0) {
    g = z > 0.0 ? hi : (z < 0.0 ? lo : 0.5 * (lo + hi));
  } else {
    g = shift + z / (2.0 * v * weight);
  }
  return std::clamp(g, lo, hi);
}

double ObjectiveSpec::nonlinear_value(const Vec& gamma) const {
  double s = 0.0;
  for (std::size_t j = 0; j < nonlinear.size(); ++j) s += nonlinear[j].eval(gamma[j]);
  return s;
}

double ObjectiveSpec::f_value(const Vec& x) const {
  double s = linear(x);
  for (std::size_t j = 0; j < nonlinear.size(); ++j) {
    s += nonlinear[j].eval(x[static_cast<std::size_t>(nonlinear_indices[j])]);
  }
  return s;
}

Vec ObjectiveSpec::restrict_nonlinear(const Vec& x) const {
  Vec out(nonlinear_indices.size());
  for (std::size_t j = 0; j < nonlinear_indices.size(); ++j) {
    out[j] = x[static_cast<std::size_t>(nonlinear_indices[j])];
  }
  return out;
}

void ObjectiveSpec::validate(int penalty_dim) const {
  if (static_cast<int>(linear.coeff.size()) != penalty_dim) {
    throw std::invalid_argument("objective: linear coefficient size " +
                                std::to_string(linear.coeff.size()) + " != penalty dimension " +
                                std::to_string(penalty_dim));
  }
  if (nonlinear_indices.size() != nonlinear.size()) {
    throw std::invalid_argument("objective: nonlinear index/term count mismatch");
  }
  for (std::size_t j = 0; j < nonlinear_indices.size(); ++j) {
    const int m = nonlinear_indices[j];
    if (m < 0 || m >= penalty_dim) {
      throw std::invalid_argument("objective: nonlinear index " + std::to_string(m) + " out of range");
    }
    if (j > 0 && nonlinear_indices[j - 1] >= m) {
      throw std::invalid_argument("objective: nonlinear indices must be strictly increasing");
    }
    if (nonlinear[j].weight < 0.0) {
      throw std::invalid_argument("objective: nonlinear term weight must be nonnegative");
    }
  }
  for (std::size_t n = 0; n < constraints.size(); ++n) {
    if (static_cast<int>(constraints[n].h.coeff.size()) != penalty_dim) {
      throw std::invalid_argument("objective: constraint row " + std::to_string(n) +
                                  " coefficient size mismatch");
    }
  }
}

}  // namespace mwl
