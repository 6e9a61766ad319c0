#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lhmine::cli {

/// Exit codes: 0 success, 1 failure after argument parsing (unreadable
/// input, empty cohort, bad rule text), 2 invalid flags.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lhmine::cli
