#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spherepack::cli {

/// Runs one command line (argv[0] is the program name). Writes the report to
/// `out` unless --out is given, diagnostics to `err`.
/// Returns 0 when the report passes, 1 when a check fails, 2 on usage or config errors.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace spherepack::cli
