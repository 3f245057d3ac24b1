#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bsva::cli {

// Dispatches one invocation. Machine output (JSON, or markdown for
// `report --markdown`) goes to out, diagnostics to err. Returns the process
// exit code: 0 success, 2 invalid arguments, 3 budget exhaustion (partial
// results are still emitted, flagged "partial": true).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bsva::cli
