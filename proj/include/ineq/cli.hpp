#pragma once

#include <iosfwd>

namespace ineq {

// Exit codes: 0 success, 1 usage or parse error, 2 mathematical domain error
// (outside M, divergent mean).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ineq
