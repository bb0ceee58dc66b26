#pragma once

// Command-line front end.  Subcommands: spectrum, bae, verify, match.
// Exit codes: 0 success, 1 verification failure, 2 configuration error.

#include <string>
#include <vector>

namespace knm {

// args excludes the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace knm
