#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drinfeld {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInvariant = 2 };

/// Runs one subcommand (wieferich, mersenne, fitting, annihilator, fermat,
/// stats, verify). args excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace drinfeld
