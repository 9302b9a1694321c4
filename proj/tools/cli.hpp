// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <string>
#include <vector>

namespace tfr::cli {

/// Parses a frequency given in Hz ("440", "440hz", "440 Hz") or already in
/// rad/s ("2764.6rad/s"). Returns rad/s. Throws std::invalid_argument.
double parse_frequency(const std::string& text);

/// Runs the command line. argv[0] is the program name. Returns the exit code:
/// 0 on success, 1 when a verify suite fails, 2 on usage or runtime errors.
int run(const std::vector<std::string>& args);

}  // namespace tfr::cli
