#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apalg {

/// Full command dispatch: parses argv (without the program name), runs the
/// subcommand and writes a JSON document to out. Returns the process exit
/// code: 0 on success, 1 on domain errors, 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apalg
