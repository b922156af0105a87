#pragma once

#include <iosfwd>

namespace tdiff::cli {

/// Exit status contract of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kBadArguments = 2,
    kAccuracyFailure = 3,
    kIoFailure = 4,
};

/// Runs one invocation. Data goes to `out` unless --output names a file;
/// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tdiff::cli
