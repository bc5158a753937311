#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixmin::cli {

// Entry point shared by the mixmin binary and the in-process CLI tests.
// Exit codes: 0 success, 2 usage error, 1 computation error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Fixed 12-significant-digit formatting used for every numeric value the
// CLI emits, chosen so identical invocations are byte-identical.
std::string format_value(double v);

}  // namespace mixmin::cli
