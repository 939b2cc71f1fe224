#pragma once

#include <cmath>
#include <utility>

#include "mwl/objective.hpp"
#include "mwl/queues.hpp"
#include "mwl/scenario.hpp"

namespace mwl {

struct ControlParams {
  double V = 0.0;      // cost-vs-backlog knob
  double sigma = 1.0;  // auxiliary box slack
  double theta = 0.0;  // exploration probability
  int W0 = 1;          // initialization window

  void validate() const;  // throws std::invalid_argument
};

// Golden-section search for the minimum of a convex function on [lo, hi].
// Shrinks the bracket to width_tol and returns the midpoint of the final
// bracket. fn must be finite on the whole interval.
template <class Fn>
double golden_section_min(Fn&& fn, double lo, double hi, double width_tol = 1e-10) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;   // 1/phi
  static const double inv_phi2 = (3.0 - std::sqrt(5.0)) / 2.0;  // 1/phi^2
  double a = lo, b = hi;
  double h = b - a;
  if (h <= width_tol) return 0.5 * (a + b);
  double c = a + inv_phi2 * h;
  double d = a + inv_phi * h;
  double fc = fn(c);
  double fd = fn(d);
  while (h > width_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + inv_phi2 * h;
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + inv_phi * h;
      fd = fn(d);
    }
  }
  return 0.5 * (a + b);
}

// Per-slot max-weight functional for a fixed stage-2 action:
//   V*l(x) + sum_n U_n h_n(x) + sum_m Z_m x_m - sum_l Q_l (mu_l - A_l)
double y_functional(const ScenarioModel& model, const ObjectiveSpec& obj, int k, int omega_index,
                    const QueueState& theta, int action, double v);
// Contract overload resolving omega by value; errors if not in support.
double y_functional(const ScenarioModel& model, const ObjectiveSpec& obj, int k, const Vec& omega,
                    const QueueState& theta, int action, double v);

struct Stage2Result {
  int action = 0;
  double value = 0.0;
};

// Exact argmin of the functional over the finite action set, lowest index on
// ties.
Stage2Result best_stage2(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
                         int omega_index, const QueueState& theta, double v);
Stage2Result best_stage2(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
                         const Vec& omega, const QueueState& theta, double v);

// Auxiliary-variable subproblem: minimize V*ftilde(gamma) - Z.gamma over the
// box [x_min - sigma, x_max + sigma], solved coordinate by coordinate.
Vec best_aux(const ObjectiveSpec& obj, const ScenarioBounds& bounds, const Vec& z, double v,
             double sigma);

}  // namespace mwl
