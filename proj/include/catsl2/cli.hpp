#pragma once

#include <ostream>

namespace catsl2 {

/// Entry point of the catsl2 tool. Exit codes: 0 success, 1 verification failure, 2 input error.
/// CATSL2_N supplies --N when the flag is absent.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace catsl2
