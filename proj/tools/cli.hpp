#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hcdtn::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kNumericalError = 3;

/// Runs one command.  `args` excludes the program name.  Results go to `out`
/// unless --out is given; errors are written to `err` as one JSON object
/// {"error": {"kind": ..., "message": ...}}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hcdtn::cli
