#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bhx {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitData = 2;

/// Runs one bhx invocation; args excludes the program name. Messages go to
/// `out`, errors to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bhx
