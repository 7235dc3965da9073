#pragma once

// The acceptance suite: one function per criterion, each returning a
// PASS/FAIL verdict with a short summary of what was checked.

#include <cstdint>
#include <string>
#include <vector>

namespace gvb::selftest {

struct Options {
  // Upper bound on n for every criterion; 0 runs each criterion over its
  // full range.
  int max_n = 0;
  std::uint64_t seed = 1;
  int jobs = 1;
  // Print wall-clock times and fail criteria that exceed their budget.
  bool timings = false;
  // Criteria to run (1-based); empty runs all of them.
  std::vector<int> only;
};

struct Result {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;
};

int criterion_count();
std::string criterion_name(int id);
double criterion_budget(int id);

std::vector<Result> run(const Options& options);
// Header, one line per criterion and a summary line.
std::string format_report(const Options& options, const std::vector<Result>& results);

}  // namespace gvb::selftest
