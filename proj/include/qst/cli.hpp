// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iostream>
#include <string>

namespace qst {

// Exit codes: 0 success, 2 bad arguments/config, 3 I/O failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadArgs = 2;
inline constexpr int kExitIo = 3;

/// Parses a real number given either as a decimal or as a fraction of pi
/// ("pi", "pi/9", "2pi/3", "-3*pi/4"). Throws std::invalid_argument on junk.
double parse_real_pi(const std::string& text);

/// Entry point behind the qst4 binary; streams are injectable for tests.
int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
             std::ostream& err = std::cerr);

}  // namespace qst
