// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_STORE_HPP_
#define ITELINT_STORE_HPP_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "itelint/ingest.hpp"
#include "itelint/model.hpp"

namespace itelint {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json to_json(const Person& p);
nlohmann::json to_json(const ChangeEvent& e);
nlohmann::json to_json(const IssueRecord& issue);

/// Inverse of to_json(IssueRecord). Throws StoreError on malformed input.
IssueRecord issue_from_json(const nlohmann::json& doc);

/// A store is JSON lines: one header line followed by one issue per line.
void write_store(std::ostream& out, const Corpus& corpus);
void write_store(const std::filesystem::path& path, const Corpus& corpus);
Corpus read_store(std::istream& in);
Corpus read_store(const std::filesystem::path& path);

}  // namespace itelint

#endif  // ITELINT_STORE_HPP_
