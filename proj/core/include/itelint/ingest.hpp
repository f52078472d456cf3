// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_INGEST_HPP_
#define ITELINT_INGEST_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "itelint/evolution.hpp"
#include "itelint/model.hpp"

namespace itelint {

class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MissingKey : public IngestError {
 public:
  using IngestError::IngestError;
};
class MalformedTimestamp : public IngestError {
 public:
  using IngestError::IngestError;
};
class MalformedDocument : public IngestError {
 public:
  using IngestError::IngestError;
};
class UnreadableSource : public IngestError {
 public:
  using IngestError::IngestError;
};

struct IngestReport {
  std::size_t documents = 0;
  std::size_t parsed = 0;
  std::size_t skipped_missing_key = 0;
  std::size_t skipped_malformed = 0;
  std::size_t skipped_duplicate = 0;
  std::size_t dropped_events = 0;
  std::size_t dropped_comments = 0;
  std::size_t conflicts = 0;
  /// One line per skipped document, dropped entry, or conflict.
  std::vector<std::string> messages;

  std::size_t skipped() const { return skipped_missing_key + skipped_malformed + skipped_duplicate; }
  void merge(const IngestReport& other);
};

nlohmann::json to_json(const IngestReport& report);

/// Maps one Jira REST v2 issue document. Throws MissingKey when there is
/// no key, MalformedTimestamp when the creation date cannot be read, and
/// MalformedDocument when "fields" is missing. Entries with unreadable
/// timestamps are dropped and counted in `report`.
IssueRecord parse_issue(const nlohmann::json& document, std::string_view repo = "",
                        const FieldCodebook& codebook = FieldCodebook::builtin(), IngestReport* report = nullptr);

/// An immutable set of issues with unique keys, sorted by key.
class Corpus {
 public:
  Corpus() = default;
  /// Throws std::invalid_argument on duplicate keys. The snapshot defaults
  /// to the latest instant recorded anywhere in the issues.
  explicit Corpus(std::vector<IssueRecord> issues, std::optional<Timestamp> snapshot = std::nullopt);

  const std::vector<IssueRecord>& issues() const { return issues_; }
  std::size_t size() const { return issues_.size(); }
  bool empty() const { return issues_.empty(); }
  const IssueRecord* find(std::string_view key) const;

  /// The instant the data describes; runs without an as-of use it as "now".
  Timestamp snapshot() const { return snapshot_; }

  /// repo -> project -> indices into issues().
  const std::map<std::string, std::map<std::string, std::vector<std::size_t>>>& index() const { return index_; }
  std::vector<std::string> projects() const;

  friend bool operator==(const Corpus& a, const Corpus& b);

 private:
  std::vector<IssueRecord> issues_;
  Timestamp snapshot_{};
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> index_;
};

/// Latest timestamp in the issue: creation, resolution, events, comments.
Timestamp latest_instant(const IssueRecord& issue);

/// The corpus as it stood at `t`: issues created after t are dropped, the
/// rest are truncated, and the snapshot becomes t.
Corpus truncate(const Corpus& corpus, Timestamp t);

struct DumpSource {
  std::filesystem::path path;
  /// Empty means the file stem (or directory name).
  std::string repo_name;
};

struct DumpResult {
  Corpus corpus;
  IngestReport report;
};

/// Reads newline-delimited documents, a JSON array of documents, a single
/// document, or a search response {"issues": [...]}. Directories are read
/// file by file (*.json, *.ndjson, *.jsonl) in name order.
DumpResult parse_dump(const DumpSource& source, const FieldCodebook& codebook = FieldCodebook::builtin());
DumpResult parse_dump(std::istream& in, std::string_view repo,
                      const FieldCodebook& codebook = FieldCodebook::builtin());
DumpResult parse_documents(const std::vector<nlohmann::json>& documents, std::string_view repo,
                           const FieldCodebook& codebook = FieldCodebook::builtin());

}  // namespace itelint

#endif  // ITELINT_INGEST_HPP_
