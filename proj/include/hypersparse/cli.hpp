#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypersparse {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Standard input and
/// output are passed in so tests can drive the tool in-process.
int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err);

}  // namespace hypersparse
