// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "itelint/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return itelint::cli::run(args, std::cout, std::cerr);
}
