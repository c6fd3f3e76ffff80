#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bflab::cli {

// Runs the command line given as argv-style arguments (program name not
// included).  Writes reports to `out` and diagnostics to `err`.
//
// Exit codes: 0 = success (and test verdicts all non-fail),
//             1 = a randomness-test verdict was fail,
//             2 = usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace bflab::cli
