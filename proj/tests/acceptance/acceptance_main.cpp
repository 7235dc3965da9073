// Runs the acceptance criteria over their full ranges with the time budgets
// enforced. Prints one PASS/FAIL line per criterion and exits nonzero when
// any criterion fails.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "selftest.hpp"

int main(int argc, char** argv) {
  gvb::selftest::Options options;
  options.timings = true;
  CLI::App app{"gradedvb acceptance suite", "gradedvb_acceptance"};
  app.add_option("--seed", options.seed, "Seed of the random cases");
  app.add_option("--only", options.only, "Criteria to run (1-based)");
  CLI11_PARSE(app, argc, argv);
  const auto results = gvb::selftest::run(options);
  std::cout << gvb::selftest::format_report(options, results);
  for (const auto& r : results) {
    if (!r.pass) return EXIT_FAILURE;
  }
  return EXIT_SUCCESS;
}
