// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_EMBEDDED_DATA_HPP_
#define ITELINT_EMBEDDED_DATA_HPP_

#include <optional>
#include <span>
#include <string_view>

namespace itelint::embedded {

/// One shipped data file, path relative to the data/ directory.
struct File {
  std::string_view path;
  std::string_view content;
};

std::span<const File> files();

inline std::optional<std::string_view> find(std::string_view path) {
  for (const auto& f : files()) {
    if (f.path == path) return f.content;
  }
  return std::nullopt;
}

}  // namespace itelint::embedded

#endif  // ITELINT_EMBEDDED_DATA_HPP_
