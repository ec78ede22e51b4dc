#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace connsys::cli {

inline constexpr const char* kVersion = "1.0.0";

/// Runs the command line (without the program name). Reports go to `out`, diagnostics
/// to `err`. Returns 0 on success, 1 when a check or audit finds a violation, 2 on
/// input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace connsys::cli
