#ifndef CHARMOMENT_CLI_HPP
#define CHARMOMENT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace charmoment {

// Parses argv-style arguments, dispatches, and writes results to `out` and
// diagnostics to `err`. Returns the process exit status: 0 on success, 2 on
// usage errors, 3 on numeric non-convergence.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace charmoment

#endif
