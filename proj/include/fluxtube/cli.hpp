#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fluxtube::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (without the program name). Results go to `out`,
// diagnostics and timings to `err`. Returns 0 on success, 1 when a computation
// fails or a certification/benchmark check does not hold, 2 on flag errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fluxtube::cli
