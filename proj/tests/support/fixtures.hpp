#pragma once

// Small hand-built scenarios shared across unit tests.

#include "mwl/scenarios_builtin.hpp"

namespace mwl::testsupport {

// Two options, two queues, three actions, one constraint row, one nonlinear
// penalty coordinate. Everything sized so tests can enumerate it by hand.
inline Scenario tiny_scenario() {
  Scenario sc;
  ScenarioModel& m = sc.model;
  m.name = "tiny";
  m.K = 2;
  m.L = 2;
  m.M = 2;
  m.sigma_default = 0.5;

  OutcomeDistribution d0;
  d0.support = {{0.0}, {1.0}};
  d0.probabilities = {0.5, 0.5};
  OutcomeDistribution d1;
  d1.support = {{0.0}, {1.0}};
  d1.probabilities = {0.2, 0.8};
  m.distributions = {d0, d1};

  m.actions = {"idle", "serve-0", "serve-1"};
  m.table.resize(2);
  for (int k = 0; k < 2; ++k) {
    m.table[static_cast<std::size_t>(k)].resize(2);
    for (int w = 0; w < 2; ++w) {
      const double on = static_cast<double>(w);
      SlotEffect idle{{0.0, 0.1}, {0.3, 0.2}, {0.0, 0.0}};
      SlotEffect s0{{1.0, 0.1}, {0.3, 0.2}, {on, 0.0}};
      SlotEffect s1{{0.8, 0.6}, {0.3, 0.2}, {0.0, on * (k == 1 ? 1.0 : 0.5)}};
      m.table[static_cast<std::size_t>(k)][static_cast<std::size_t>(w)] = {idle, s0, s1};
    }
  }

  m.bounds.x_min = {0.0, 0.0};
  m.bounds.x_max = {1.0, 1.0};
  m.bounds.A_max = {0.5, 0.5};
  m.bounds.mu_max = {1.0, 1.0};

  ObjectiveSpec& obj = sc.objective;
  obj.linear.coeff = {1.0, 0.0};
  obj.linear.offset = 0.0;
  obj.nonlinear_indices = {1};
  ConvexTerm quad;
  quad.kind = ConvexTerm::Kind::quadratic;
  quad.weight = 1.0;
  quad.shift = 0.25;
  obj.nonlinear = {quad};
  ConstraintRow row;
  row.h.coeff = {1.0, 1.0};
  row.h.offset = 0.0;
  row.b = 0.9;
  obj.constraints = {row};

  m.validate();
  obj.validate(m.M);
  return sc;
}

}  // namespace mwl::testsupport
