#ifndef SUPERSEL_CLI_HPP
#define SUPERSEL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace supersel {

// Dispatches one command line (without the program name). Writes the report
// to `out` and diagnostics to `err`. Returns 0 when every check passed, 1
// when a check failed, 2 on usage or parse errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace supersel

#endif
