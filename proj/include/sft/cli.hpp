#pragma once

#include <string>
#include <vector>

namespace sft {

/// Command-line entry point (args exclude the program name).
/// Exit codes: 0 ok, 1 runtime error, 2 usage error.
int run_cli(const std::vector<std::string>& args);

}  // namespace sft
