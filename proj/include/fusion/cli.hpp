#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fusion::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInputError = 2;

/// Entry point behind the `fusionring` tool. `args` excludes the program
/// name. Returns 0 on success, 1 on a negative result, 2 on input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fusion::cli
