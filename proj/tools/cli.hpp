#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace picg::cli {

/// Runs one command line (args excludes the program name). Returns 0 on
/// success, 1 on validation or runtime errors, 2 on flag errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace picg::cli
