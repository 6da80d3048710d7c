#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lacuna {

// Runs the command line `args` (args[0] is the program name). Output goes to
// `out`, diagnostics to `err`. Returns 0 on success, 2 on usage or
// resource-cap errors, 1 on other failures.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Names of all subcommands, in help order.
std::vector<std::string> cli_subcommands();

}  // namespace lacuna
