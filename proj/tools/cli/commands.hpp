#pragma once

#include <ostream>

namespace gvb::cli {

// Exit codes of every subcommand.
constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

// Parses argv, runs one subcommand and writes its report to out and its
// diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gvb::cli
