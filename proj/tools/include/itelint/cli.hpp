// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_CLI_HPP_
#define ITELINT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace itelint::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitViolations = 3;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace itelint::cli

#endif  // ITELINT_CLI_HPP_
