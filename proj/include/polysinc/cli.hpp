#pragma once

#include <iosfwd>

namespace polysinc {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_config = 2, exit_numeric = 3 };

/// polysinc {solve|compare|lebesgue|validate} [options]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace polysinc
