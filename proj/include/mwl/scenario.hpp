#pragma once

#include <string>
#include <vector>

#include "mwl/objective.hpp"
#include "mwl/rng.hpp"
#include "mwl/types.hpp"

namespace mwl {

// Finite discrete distribution over outcome vectors.
struct OutcomeDistribution {
  std::vector<Vec> support;  // distinct vectors, all the same dimension
  Vec probabilities;         // nonnegative, sums to 1 within 1e-12

  int size() const { return static_cast<int>(support.size()); }
  int dim() const { return support.empty() ? 0 : static_cast<int>(support.front().size()); }
  void validate(int option_index) const;  // throws, message names the option
};

// Deterministic per-slot consequences of a (option, outcome, action) triple.
struct SlotEffect {
  Vec x;   // penalty vector, size M
  Vec A;   // arrivals, size L
  Vec mu;  // service, size L
};

struct ScenarioBounds {
  Vec x_min, x_max;  // size M
  Vec A_max, mu_max;  // size L
};

// The controlled environment. Everything here is immutable after
// construction; the outcome distributions are visible only to the oracle
// side, the controller never reads them.
struct ScenarioModel {
  std::string name;
  int K = 0;  // stage-1 option count
  int L = 0;  // queue count
  int M = 0;  // penalty dimension
  std::vector<OutcomeDistribution> distributions;  // size K
  std::vector<std::string> actions;                // stage-2 action names
  // table[k][w][i]: effect of option k, outcome index w, action i
  std::vector<std::vector<std::vector<SlotEffect>>> table;
  ScenarioBounds bounds;
  double sigma_default = 1.0;

  int num_actions() const { return static_cast<int>(actions.size()); }
  const SlotEffect& effect(int k, int w, int i) const { return table[k][w][i]; }
  // index of omega in support of F_k, or -1
  int find_outcome(int k, const Vec& omega) const;
  // exhaustive invariant sweep (distributions, table shape, bounds); throws
  void validate() const;
};

// Draw omega ~ F_k; consumes exactly one uniform variate.
int sample_outcome_index(const ScenarioModel& model, int k, Rng& rng);
Vec sample_outcome(const ScenarioModel& model, int k, Rng& rng);

// Lookup-based evaluation; omega must be in the support of F_k.
SlotEffect evaluate_slot(const ScenarioModel& model, int k, const Vec& omega, int action);

}  // namespace mwl
