#pragma once

#include <ostream>

namespace uqr::cli {

/// Exit codes: 0 success, 2 usage or config error, 3 solver or runtime error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

/// Entry point of the `uqr` tool; all console output goes to `out` and `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uqr::cli
