#pragma once

namespace bandlab::cli {

// Exit codes, also documented in --help.
constexpr int kOk = 0;
constexpr int kConfigError = 2;      // flags, config file, manifold string, bad grids
constexpr int kPreconditionError = 3;  // radius too large, bandwidth too small
constexpr int kSingularError = 4;    // degenerate configurations, candidate sets
constexpr int kIntegrityError = 5;   // numerical integrity violations
constexpr int kMissingLevelError = 6;
constexpr int kIoError = 7;

// Runs one subcommand; returns the process exit code. Failures print a
// machine-readable error JSON to stdout.
int run(int argc, const char* const* argv);

}  // namespace bandlab::cli
