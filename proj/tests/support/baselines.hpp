#pragma once

// Reference controllers used only by tests: a from-scratch exact max-weight
// controller, a stationary-policy player, and a no-stage-1 drift-plus-penalty
// controller for the K = 1 reduction. These deliberately re-code the per-slot
// weight math instead of calling the library helpers.

#include <cstdint>
#include <vector>

#include "mwl/oracle.hpp"
#include "mwl/queues.hpp"
#include "mwl/rng.hpp"
#include "mwl/scenario.hpp"

namespace mwl::testsupport {

struct BaselineStep {
  int k = 0;
  bool exploration = false;
  int action = 0;
  int omega_index = -1;
  Vec gamma;
  QueueState after;
};

class ExactMaxWeight {
 public:
  ExactMaxWeight(const ScenarioModel& model, const ObjectiveSpec& obj, double v, double sigma,
                 double theta, int w0, std::uint64_t seed);

  void initialize();
  BaselineStep step();
  const QueueState& state() const { return theta_; }

 private:
  double slot_weight(int k, int w, int i) const;
  double expected_min_weight(int k) const;
  Vec aux_argmin() const;
  void advance(int k, int w, int i, const Vec& gamma);
  int draw_outcome(int k);

  const ScenarioModel& model_;
  const ObjectiveSpec& obj_;
  double v_, sigma_, theta_param_;
  int w0_;
  Rng rng_;
  QueueState theta_;
};

// Plays a fixed stationary policy; gamma is pinned at the policy's expected
// penalty on the nonlinear coordinates.
class FixedPolicyPlayer {
 public:
  FixedPolicyPlayer(const ScenarioModel& model, const ObjectiveSpec& obj,
                    const StationaryPolicy& policy, std::uint64_t seed);

  BaselineStep step();
  const QueueState& state() const { return theta_; }

 private:
  int draw_from(const Vec& probs);

  const ScenarioModel& model_;
  const ObjectiveSpec& obj_;
  StationaryPolicy policy_;
  Vec gamma_star_;
  Rng rng_;
  QueueState theta_;
};

// Drift-plus-penalty controller with no stage-1 decision, valid only for
// K = 1 scenarios. Mirrors the variate stream of the full controller so the
// traces can be compared slot by slot.
class NoStage1Dpp {
 public:
  NoStage1Dpp(const ScenarioModel& model, const ObjectiveSpec& obj, double v, double sigma,
              double theta, int w0, std::uint64_t seed);

  void initialize();
  BaselineStep step();
  const QueueState& state() const { return theta_; }

 private:
  double slot_weight(int w, int i) const;
  void advance(int w, int i, const Vec& gamma);

  const ScenarioModel& model_;
  const ObjectiveSpec& obj_;
  double v_, sigma_, theta_param_;
  int w0_;
  Rng rng_;
  QueueState theta_;
};

}  // namespace mwl::testsupport
