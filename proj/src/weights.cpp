#include "mwl/weights.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mwl {

void ControlParams::validate() const {
  if (V < 0.0) throw std::invalid_argument("params: V must be nonnegative");
  if (sigma <= 0.0) throw std::invalid_argument("params: sigma must be positive");
  if (theta < 0.0 || theta >= 1.0) throw std::invalid_argument("params: theta must lie in [0, 1)");
  if (W0 < 1) throw std::invalid_argument("params: W0 must be at least 1");
}

double y_functional(const ScenarioModel& model, const ObjectiveSpec& obj, int k, int omega_index,
                    const QueueState& theta, int action, double v) {
  const SlotEffect& e = model.effect(k, omega_index, action);
  double y = v * obj.linear(e.x);
  for (std::size_t n = 0; n < obj.constraints.size(); ++n) {
    y += theta.U[n] * obj.constraints[n].h(e.x);
  }
  for (std::size_t j = 0; j < obj.nonlinear_indices.size(); ++j) {
    y += theta.Z[j] * e.x[static_cast<std::size_t>(obj.nonlinear_indices[j])];
  }
  for (std::size_t l = 0; l < e.mu.size(); ++l) {
    y -= theta.Q[l] * (e.mu[l] - e.A[l]);
  }
  return y;
}

double y_functional(const ScenarioModel& model, const ObjectiveSpec& obj, int k, const Vec& omega,
                    const QueueState& theta, int action, double v) {
  const int w = model.find_outcome(k, omega);
  if (w < 0) {
    throw std::invalid_argument("y_functional: outcome not in support of option " + std::to_string(k));
  }
  return y_functional(model, obj, k, w, theta, action, v);
}

Stage2Result best_stage2(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
                         int omega_index, const QueueState& theta, double v) {
  const int na = model.num_actions();
  if (na == 0) throw std::invalid_argument("best_stage2: empty action set");
  Stage2Result best{0, y_functional(model, obj, k, omega_index, theta, 0, v)};
  for (int i = 1; i < na; ++i) {
    const double y = y_functional(model, obj, k, omega_index, theta, i, v);
    if (y < best.value) best = {i, y};
  }
  return best;
}

Stage2Result best_stage2(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
                         const Vec& omega, const QueueState& theta, double v) {
  const int w = model.find_outcome(k, omega);
  if (w < 0) {
    throw std::invalid_argument("best_stage2: outcome not in support of option " + std::to_string(k));
  }
  return best_stage2(model, obj, k, w, theta, v);
}

Vec best_aux(const ObjectiveSpec& obj, const ScenarioBounds& bounds, const Vec& z, double v,
             double sigma) {
  const std::size_t mt = obj.nonlinear_indices.size();
  Vec gamma(mt, 0.0);
  for (std::size_t j = 0; j < mt; ++j) {
    const int m = obj.nonlinear_indices[j];
    const double lo = bounds.x_min[static_cast<std::size_t>(m)] - sigma;
    const double hi = bounds.x_max[static_cast<std::size_t>(m)] + sigma;
    const ConvexTerm& term = obj.nonlinear[j];
    const bool flat = v <= 0.0 || term.weight == 0.0;
    if (flat) {
      // objective reduces to -z_j * gamma: a linear program over the box
      gamma[j] = z[j] > 0.0 ? hi : (z[j] < 0.0 ? lo : 0.5 * (lo + hi));
    } else if (term.has_closed_form()) {
      gamma[j] = term.closed_form_argmin(v, z[j], lo, hi);
    } else {
      const double zj = z[j];
      gamma[j] = golden_section_min(
          [&](double g) {
            const double val = v * term.eval(g) - zj * g;
            if (!std::isfinite(val)) {
              throw std::domain_error("best_aux: nonlinear term not finite on the gamma box");
            }
            return val;
          },
          lo, hi, 1e-10);
    }
  }
  return gamma;
}

}  // namespace mwl
