#pragma once

#include <ostream>

namespace sharpsphere {

/// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid configuration.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

/// Entry point of the `sharpsphere` tool. Reports go to `out` unless --out
/// names a file; diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sharpsphere
