#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mwl/controller.hpp"
#include "mwl/scenarios_builtin.hpp"

namespace mwl {

// One CLI-level experiment: a scenario, a controller configuration, and a
// list of seeds swept (optionally in parallel).
struct ExperimentConfig {
  std::string scenario;  // built-in name or file path
  Approach approach = Approach::approach2;
  Schedule schedule;
  double theta = 0.0;
  std::optional<double> sigma;  // scenario default when unset
  SlotIndex horizon = 0;
  std::vector<std::uint64_t> seeds = {1};
  std::string out_dir = ".";
  int jobs = 1;
  std::string label;  // file-name stem; defaults to scenario_approach

  void validate() const;
  std::string stem() const;
};

// "a..b" (inclusive) or comma-separated values
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

struct ExperimentOutput {
  std::vector<std::string> csv_paths;
  std::string summary_path;
  std::vector<RunResult> results;  // ordered like config.seeds
};

// Runs every seed, writes one checkpoint CSV per seed plus an aggregate
// summary JSON. Output bytes depend only on the config and the seed list.
ExperimentOutput run_experiment(const ExperimentConfig& config);

RunConfig make_run_config(const ExperimentConfig& config, const Scenario& scenario,
                          std::uint64_t seed);

}  // namespace mwl
