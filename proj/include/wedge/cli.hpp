// Command-line front end; kept as a library call so tests can drive it
// in-process.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wedge {

// Runs one CLI invocation (args excludes the program name). Exit codes:
// 0 success, 1 usage, 2 regime violation, 3 regime without an implemented
// closed form, 4 verification failure, 5 oracle disagreement.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wedge
