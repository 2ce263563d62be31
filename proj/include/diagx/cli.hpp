#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace diagx {

/// Run one CLI invocation.  `args` holds the arguments after the program
/// name in natural order.  Returns the process exit status:
///   0 Diagonalizable (or a command that completed without a verdict)
///   1 usage, I/O, parse, or numeric error
///   2 Defective
///   3 Indeterminate
/// Exit codes depend on the verdict only, never on formatting flags.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace diagx
