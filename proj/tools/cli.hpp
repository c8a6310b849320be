#pragma once

#include <iosfwd>

namespace kzmc::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_parse = 2,
  exit_contract = 3,
  exit_theorem = 4,
};

// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kzmc::cli
