#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nrp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInstance = 2;

/// Entry point behind the `nrp` binary; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nrp::cli
