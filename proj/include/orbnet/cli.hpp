#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orbnet::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;  // computation or input data rejected
inline constexpr int kUsageError = 2;   // bad flags or flag values

// args excludes the program name. All results go to `out` or to files named
// by flags; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace orbnet::cli
