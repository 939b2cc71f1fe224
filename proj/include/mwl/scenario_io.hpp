#pragma once

#include <string>

#include "mwl/oracle.hpp"
#include "mwl/scenarios_builtin.hpp"

namespace mwl {

// Scenario file format; see docs/scenario-schema.md. Loading validates every
// invariant and reports the offending option/row in the error message.
Scenario load_scenario_json(const std::string& text);
Scenario load_scenario_file(const std::string& path);
std::string scenario_to_json(const Scenario& scenario);  // round-trips bit-exactly
void save_scenario_file(const Scenario& scenario, const std::string& path);

// Resolves a --scenario argument: a built-in name or a path to a file.
Scenario resolve_scenario(const std::string& name_or_path);

// Structured f* result file consumed by the acceptance suites.
std::string fstar_to_json(const FstarResult& result, double theta);
FstarResult fstar_from_json(const std::string& text, double* theta_out = nullptr);
void save_fstar_file(const FstarResult& result, double theta, const std::string& path);
FstarResult load_fstar_file(const std::string& path, double* theta_out = nullptr);

}  // namespace mwl
