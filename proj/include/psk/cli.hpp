#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "psk/error.hpp"

namespace psk::cli {

/// 1 for failed checks, 2 for malformed input or arguments, 3 for size limits.
int exit_code_for(ErrorKind kind);

/// Runs one command line (without the program name). Documents are read from
/// `in` and written to `out` as newline-delimited JSON unless -i / -o are given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace psk::cli
