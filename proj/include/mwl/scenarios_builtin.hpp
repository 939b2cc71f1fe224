#pragma once

#include <string>

#include "mwl/objective.hpp"
#include "mwl/scenario.hpp"

namespace mwl {

struct Scenario {
  ScenarioModel model;
  ObjectiveSpec objective;
};

// L Bernoulli downlink channels behind a measure-or-transmit-blindly choice.
// Stage-1 options: measure-all, blind-transmit per channel, idle (K = L+2).
// Penalties are per-node power draws, the objective is total average power,
// and each link carries an average-power cap.
struct DownlinkProbeOptions {
  int L = 2;
  Vec p = {0.8, 0.5};         // channel ON probabilities
  Vec lambda = {0.34, 0.30};  // Bernoulli arrival rates
  double c_meas = 0.055;      // measurement power
  double c_tx = 0.45;         // transmit power
  double packet_size = 1.0;   // work units moved per arrival/service
  Vec power_cap = {0.2, 0.2};
};

// Two-queue admission control with a concave throughput utility: the cost is
// -sum_m log(1 + xbar_m) with both penalty coordinates nonlinear, so the
// auxiliary-variable path is fully exercised. Two server modes with opposite
// channel distributions make the stage-1 choice informative.
struct UtilityFairOptions {
  Vec mode0_p = {0.9, 0.3};
  Vec mode1_p = {0.3, 0.9};
};

Scenario build_downlink_probe(const DownlinkProbeOptions& options = {});
Scenario build_utility_fair(const UtilityFairOptions& options = {});

// Named builder with per-scenario defaults; throws on unknown names.
Scenario build_scenario(const std::string& name);
bool is_builtin_scenario(const std::string& name);

}  // namespace mwl
