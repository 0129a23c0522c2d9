#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rkit {

/// Exit codes of robertson-kit.
enum ExitCode : int {
  exit_pass = 0,
  exit_assertion = 1,
  exit_usage = 2,
  exit_findings = 3,
};

/// Runs one robertson-kit command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rkit
