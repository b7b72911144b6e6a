#ifndef POLYRED_CLI_HPP
#define POLYRED_CLI_HPP

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "polyred/polynomial.hpp"

namespace polyred::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kParse = 2,
    kNoConvergence = 3,
    kVerification = 4,
};

/// "lhs = rhs" becomes lhs - rhs; text without '=' is parsed as is.
Polynomial equation_to_polynomial(std::string_view text);

/// Runs the command line given without the program name; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyred::cli

#endif  // POLYRED_CLI_HPP
