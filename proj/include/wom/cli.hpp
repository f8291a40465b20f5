#pragma once

#include <ostream>

namespace wom {

// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitSelftestFailed = 1, kExitConfig = 2, kExitNumerical = 3 };

// Parses argv, runs one subcommand and writes CSV to `out` (or --out). Diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Runs the invariant corpus; one line per property. Returns true when every property holds.
bool run_selftest(std::ostream& out);

}  // namespace wom
