// cli.hpp — command-line front end (steady | spectrum | delay | sweep2d |
// verify | fig)

#pragma once

namespace xcmm {

// Exit codes: 0 ok, 1 usage, 2 validation/input, 3 verification failure.
int run_cli(int argc, const char* const* argv);

}  // namespace xcmm
