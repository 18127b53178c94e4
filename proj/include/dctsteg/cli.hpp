#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dctsteg/error.hpp"

namespace dctsteg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitCapacity = 4;
inline constexpr int kExitAuth = 5;
inline constexpr int kExitNumeric = 6;

int exit_code_for(ErrorCode code);

/// Runs one command line (args[0] is the program name). Reports go to `out`,
/// one-line diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dctsteg::cli
