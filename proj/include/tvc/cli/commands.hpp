#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tvc::cli {

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitSingular = 3;

/**
 * @brief Entry point shared by the executable and the tests.
 *
 * `args` excludes the program name; its first element selects the
 * subcommand (simulate, fit, test, table1, power-curve). Human-readable
 * output goes to `out`, diagnostics to `err`.
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tvc::cli
