// Acceptance gate: one pass/fail line per criterion. Usage:
//   mwl_acceptance [suite|all]

#include <iostream>
#include <string>

#include "mwl/acceptance.hpp"

int main(int argc, char** argv) {
  const std::string suite = argc > 1 ? argv[1] : "all";
  try {
    return mwl::accept::run_and_print(suite, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
