#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qframes::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int { success = 0, property_failure = 1, input_error = 2, resource_cap = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qframes::cli
