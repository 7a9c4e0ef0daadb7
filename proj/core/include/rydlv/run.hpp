#pragma once

#include <iosfwd>
#include <string>

#include "rydlv/config.hpp"

namespace rydlv::io {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 2,
  exit_numerical = 3,
  exit_io = 4,
};

/// Executes one mode: writes its files into output_dir, writes summary.txt
/// and prints the same `key=value` summary to `out`. Errors are reported on
/// `err` and mapped to an exit code; nothing is thrown.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Toolkit version string.
std::string version();

}  // namespace rydlv::io
