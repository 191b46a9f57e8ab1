#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nabla/identities.hpp"

namespace nabla::cli {

enum ExitCode : int { exit_ok = 0, exit_failure = 1, exit_usage = 2, exit_finding = 3 };

/// 1 if any report failed, else 3 if any has a finding, else 0.
int exit_code_for(const std::vector<VerdictReport>& reports);

/// Runs one invocation. `args` excludes the program name. Standard input is
/// read only by `eval -`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nabla::cli
