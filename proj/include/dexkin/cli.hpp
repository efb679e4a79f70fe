#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dexkin::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Primary output goes to
/// `out` unless --out DIR is given; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dexkin::cli
