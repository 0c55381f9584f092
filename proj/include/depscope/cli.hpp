#pragma once

#include <ostream>

namespace depscope {

// Exit codes: 0 success, 1 error, 2 when `scan` finds a vulnerable deployed
// path.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFindings = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace depscope
