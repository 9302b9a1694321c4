// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "cli.hpp"

int main(int argc, char** argv) { return tfr::cli::run(std::vector<std::string>(argv, argv + argc)); }
