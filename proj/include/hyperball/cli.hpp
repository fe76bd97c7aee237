#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hyperball/json.hpp"
#include "hyperball/scalar.hpp"

namespace hyperball {

inline constexpr std::string_view kVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitHolds = 0,
  kExitRefuted = 1,
  kExitInconclusive = 2,
  kExitUsage = 3,
};

struct RunConfig {
  std::uint64_t seed = 0;
  std::uint64_t budget = 10000;
  Scalar tau = pow2(-30);
  std::string backend = "dyadic";
  std::string output;
  unsigned threads = 1;
  bool json = false;
};

Json to_json(const RunConfig& config);

/// Runs one subcommand. `args` excludes the program name. Human-readable
/// output (or the JSON report with --json) goes to `out`, diagnostics to `err`.
/// The report's "timing" member is the only part that varies between runs.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hyperball
