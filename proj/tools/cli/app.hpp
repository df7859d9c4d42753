#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sbparity::cli {

/// Parses the command line, dispatches the subcommand and maps errors to
/// exit codes. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sbparity::cli
