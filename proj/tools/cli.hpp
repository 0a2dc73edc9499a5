#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pkf::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kInputError = 2,
};

/// Runs one invocation of the `pkf` tool. args[0] is the program name.
/// Machine-readable summaries go to `out`, diagnostics to `err`. Every
/// subcommand writes manifest.json into its --out directory; passing that
/// file back through --config reruns the same configuration.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pkf::cli
