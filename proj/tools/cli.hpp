#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace roadsv::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 2,     // bad flags, unknown keys, unreadable or malformed input files
    kData = 3,      // gaps, duplicates, zero exposure, undefined statistics
    kNumerical = 4, // optimizer or constraint failures
};

/// Runs the command line `args` (without the program name) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace roadsv::cli
