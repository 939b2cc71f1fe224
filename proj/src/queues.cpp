#include "mwl/queues.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mwl {

QueueState QueueState::zeros(int L, int N, int Mt, SlotIndex t0) {
  QueueState s;
  s.Q.assign(static_cast<std::size_t>(L), 0.0);
  s.U.assign(static_cast<std::size_t>(N), 0.0);
  s.Z.assign(static_cast<std::size_t>(Mt), 0.0);
  s.t = t0;
  return s;
}

double advance_actual(double q, double mu, double a) {
  if (mu < 0.0 || a < 0.0) {
    throw std::invalid_argument("advance_actual: negative service (" + std::to_string(mu) +
                                ") or arrival (" + std::to_string(a) + ")");
  }
  return std::max(q - mu, 0.0) + a;
}

double advance_inequality(double u, double h_of_x, double b) {
  return std::max(u + h_of_x - b, 0.0);
}

double advance_equality(double z, double gamma, double x, double gamma_lo, double gamma_hi) {
  if (gamma < gamma_lo - 1e-12 || gamma > gamma_hi + 1e-12) {
    throw std::invalid_argument("advance_equality: gamma " + std::to_string(gamma) +
                                " outside [" + std::to_string(gamma_lo) + ", " +
                                std::to_string(gamma_hi) + "]");
  }
  return z - gamma + x;
}

double lyapunov(const QueueState& theta) {
  double s = 0.0;
  for (double q : theta.Q) s += q * q;
  for (double u : theta.U) s += u * u;
  for (double z : theta.Z) s += z * z;
  return 0.5 * s;
}

}  // namespace mwl
