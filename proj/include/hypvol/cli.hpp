#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypvol {

/// Runs the command line (args excludes the program name). Returns the process exit code:
/// 0 ok, 1 verification failure, 2 usage or domain error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypvol
