#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace digitseq {

/// Parse and run one CLI invocation, writing CSV to `out` and diagnostics to
/// `err`. Returns the process exit code: 0 ok, 2 usage/validation error,
/// 3 budget exceeded, 4 internal invariant violation.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace digitseq
