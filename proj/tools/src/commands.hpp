#pragma once

#include <iosfwd>

namespace lfpc::cli {

// Exit codes: 0 success, 1 data/model error, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

// Runs one `lfpc` invocation in-process.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lfpc::cli
