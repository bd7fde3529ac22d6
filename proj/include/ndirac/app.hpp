#pragma once

#include <ostream>

namespace ndirac {

// One CLI invocation. Exit codes: 0 success, 2 config error, 3 non-convergence,
// 4 contract violation (including a verification check outside its tolerance).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ndirac
