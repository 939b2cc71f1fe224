#pragma once

#include "mwl/types.hpp"

namespace mwl {

// Full backlog state: actual queues Q, inequality virtual queues U, signed
// equality virtual queues Z. t is negative during the round-robin
// initialization phase.
struct QueueState {
  Vec Q;
  Vec U;
  Vec Z;
  SlotIndex t = 0;

  static QueueState zeros(int L, int N, int Mt, SlotIndex t0);
};

// one-slot update laws
double advance_actual(double q, double mu, double a);                 // max[q - mu, 0] + a
double advance_inequality(double u, double h_of_x, double b);         // max[u + h - b, 0]
double advance_equality(double z, double gamma, double x,
                        double gamma_lo, double gamma_hi);            // z - gamma + x

double lyapunov(const QueueState& theta);

}  // namespace mwl
