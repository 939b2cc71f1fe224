#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mwl/objective.hpp"
#include "mwl/queues.hpp"
#include "mwl/scenario.hpp"

namespace mwl {

// Stationary randomized two-stage policy: a stage-1 distribution plus, for
// each (option, outcome), a distribution over stage-2 actions.
struct StationaryPolicy {
  Vec stage1;                           // size K
  std::vector<std::vector<Vec>> stage2;  // [k][omega_index] -> action distribution

  void validate(const ScenarioModel& model, double theta) const;  // throws
};

// Exact expected max-weight functional e_k = E[min_I Y_k | k], enumerating
// the finite outcome support. Requires the true distribution, so it lives on
// the oracle side only.
double exact_e(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
               const QueueState& theta, double v);
double exact_e_serial(const ScenarioModel& model, const ObjectiveSpec& obj, int k,
                      const QueueState& theta, double v);

struct PolicyAverages {
  Vec xbar;
  Vec Abar;
  Vec mubar;
};

// Exact expectations of penalty/arrival/service under a stationary policy.
PolicyAverages policy_time_averages(const ScenarioModel& model, const StationaryPolicy& policy);

struct FstarOptions {
  int certificate_samples = 100000;
  std::uint64_t certificate_seed = 1u;
  double tol_fstar = 1e-4;
  int max_cut_rounds = 80;
  double cut_tol = 1e-10;
};

struct FstarResult {
  bool feasible = false;
  double value = 0.0;  // f*_theta
  StationaryPolicy policy;
  PolicyAverages averages;
  // one-shot linearization gap at the solution; upper-bounds value - f*
  double optimality_gap_bound = 0.0;
  // value minus the best of the randomly sampled feasible policies
  double certificate_margin = 0.0;
  bool certificate_ok = false;
  // true when no sampled policy was feasible, so the margin is meaningless
  bool certificate_vacuous = false;
  std::string message;
};

// Brute-force stationary-policy optimum over the occupancy measure: an exact
// LP when the cost is linear, epigraph cutting planes over the same polytope
// when a separable convex part is present. Enforces the theta/K exploration
// floor on stage-1 probabilities.
FstarResult solve_fstar(const ScenarioModel& model, const ObjectiveSpec& obj, double theta,
                        const FstarOptions& options = {});

// Samples `count` random policies respecting the exploration floor, discards
// infeasible ones, and returns the best objective found (+inf if none).
double best_random_feasible_policy(const ScenarioModel& model, const ObjectiveSpec& obj,
                                   double theta, int count, std::uint64_t seed);
double best_random_feasible_policy_serial(const ScenarioModel& model, const ObjectiveSpec& obj,
                                          double theta, int count, std::uint64_t seed);

}  // namespace mwl
