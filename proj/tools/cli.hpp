#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "fockport/sweep.hpp"

namespace fockport::cli {

/// Process exit codes.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitDomain = 3,
};

/// Runs one command line (without the program name) and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses a sweep spec written as JSON or as key=value lines.
/// Throws SpecError for malformed, empty or unknown content.
[[nodiscard]] SweepSpec parse_sweep_spec(const std::string& text);

}  // namespace fockport::cli
