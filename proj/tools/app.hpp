#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tstein::cli {

/// Parses argv (argv[0] included) and runs the chosen subcommand; returns the exit code.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

} // namespace tstein::cli
