#pragma once

#include <ostream>

namespace cloakwave::cli {

/// Exit codes: 0 success, 2 invalid or unsupported input, 3 numerical failure, 1 anything else.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cloakwave::cli
