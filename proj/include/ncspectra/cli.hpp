#pragma once

#include <iosfwd>

namespace ncspectra::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kCheckFailed = 2,
    kIllPosed = 3,
};

/// Entry point of `ncspectra <spectrum|verify|scan|critical|fock-check> [flags]`.
/// Results go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ncspectra::cli
