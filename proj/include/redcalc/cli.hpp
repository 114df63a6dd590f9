#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace redcalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitTooManyVariables = 3;

// Runs one invocation. args excludes the program name. Tables go to `out`,
// diagnostics to `err`; files named by --output are written directly.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace redcalc::cli
