#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracprop {

/// Exit codes shared by every subcommand.
namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kBadInput = 2;
inline constexpr int kBandUnresolvable = 3;
inline constexpr int kDegenerateSymbol = 4;
inline constexpr int kInconsistentPair = 5;
inline constexpr int kModelMismatch = 6;
}  // namespace exit_code

/// Entry point of the `fracprop` tool; args excludes the program name.
/// JSON reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracprop
