#ifndef CWAC_CLI_HPP
#define CWAC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace cwac {

// Runs the command-line front end on an argument list (program name excluded)
// and returns the process exit code.  All normal output goes to `out`, all
// diagnostics to `err`, so tests can drive the tool in-process.
//
// Exit codes: 0 success, 1 internal error, 2 parameter or usage error,
// 3 decode failure, 4 exhaustive-search cap refusal.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cwac

#endif
