#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mwl::accept {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
};

const std::vector<std::string>& suite_names();

// Runs one suite ("lln", "equality", ...) or "all"; throws on unknown names.
std::vector<CriterionResult> run_suite(const std::string& name);

// Prints one PASS/FAIL line per criterion; returns 0 iff everything passed.
int run_and_print(const std::string& name, std::ostream& os);

}  // namespace mwl::accept
