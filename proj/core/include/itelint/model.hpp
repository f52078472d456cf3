// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_MODEL_HPP_
#define ITELINT_MODEL_HPP_

#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace itelint {

/// UTC instant with millisecond precision.
using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;
using Duration = std::chrono::milliseconds;

/// A person known to the tracker. Equality is by id; ingest fills a missing
/// id from the display name so that comparisons stay meaningful.
struct Person {
  std::string id;
  std::string display;

  friend bool operator==(const Person& a, const Person& b) { return a.id == b.id; }
};

/// The 20 canonical issue field codes plus the Other sentinel.
enum class FieldCode : std::uint8_t {
  Summary,
  Description,
  Labels,
  Environment,
  VersionsAffected,
  VersionsFixed,
  IssueType,
  Project,
  Components,
  Parent,
  IssueLinks,
  CreatedDate,
  ResolvedDate,
  Status,
  Priority,
  Resolution,
  Creator,
  Reporter,
  Assignee,
  Comments,
  Other,
};

inline constexpr std::size_t kCanonicalFieldCount = 20;

enum class Theme : std::uint8_t { Content, MetaContent, RepoStructure, Workflow, Community };

std::string_view to_string(FieldCode code);
std::string_view to_string(Theme theme);
std::optional<FieldCode> parse_field_code(std::string_view name);
std::optional<Theme> parse_theme(std::string_view name);

/// Theme owning a canonical code. Other has no theme.
std::optional<Theme> theme_of(FieldCode code);

/// All canonical codes in declaration order (Other excluded).
const std::array<FieldCode, kCanonicalFieldCount>& canonical_fields();

enum class ValueShape : std::uint8_t { Text, List, Person, None };

/// How values of a field are stored in a FieldMap. Codes without a
/// snapshot value (links, comments, dates, Other) report None.
ValueShape shape_of(FieldCode code);

using FieldValue = std::variant<std::string, std::vector<std::string>, Person>;
using FieldMap = std::map<FieldCode, FieldValue>;

struct ChangeEvent {
  Timestamp when{};
  std::optional<Person> author;
  std::string field_raw;
  FieldCode field = FieldCode::Other;
  std::optional<std::string> from;
  std::optional<std::string> to;
  /// Machine identifiers (user names, version ids) when the source records them.
  std::optional<std::string> from_id;
  std::optional<std::string> to_id;
  bool creational = false;
  /// Back-filled from the final state rather than read from the changelog.
  bool synthetic = false;

  friend bool operator==(const ChangeEvent&, const ChangeEvent&) = default;
};

struct Comment {
  std::optional<Person> author;
  Timestamp when{};
  std::string body;

  friend bool operator==(const Comment&, const Comment&) = default;
};

enum class LinkDirection : std::uint8_t { Inward, Outward };

struct IssueLink {
  std::string link_type;
  LinkDirection direction = LinkDirection::Outward;
  std::string target;

  friend bool operator==(const IssueLink&, const IssueLink&) = default;
};

struct IssueRecord {
  std::string key;
  std::string repo;
  std::string project;
  std::string raw_issue_type;
  FieldMap fields;
  /// Fields outside the canonical set, keyed by their raw name.
  std::map<std::string, std::string> custom;
  Timestamp created{};
  std::optional<Timestamp> resolved;
  std::vector<Comment> comments;
  std::vector<IssueLink> links;
  std::vector<ChangeEvent> changelog;

  const std::string* text(FieldCode code) const;
  const std::vector<std::string>* list(FieldCode code) const;
  const Person* person(FieldCode code) const;
  bool has(FieldCode code) const { return fields.count(code) != 0; }

  friend bool operator==(const IssueRecord&, const IssueRecord&) = default;
};

const std::string* text_of(const FieldMap& fields, FieldCode code);
const std::vector<std::string>* list_of(const FieldMap& fields, FieldCode code);
const Person* person_of(const FieldMap& fields, FieldCode code);

/// Inserts `value` into `fields`, normalising empty text/lists to absent and
/// lists to sorted unique order.
void set_field(FieldMap& fields, FieldCode code, FieldValue value);

struct ValidationEntry {
  std::string field;
  std::string rule;
  std::string detail;

  friend bool operator==(const ValidationEntry&, const ValidationEntry&) = default;
};

/// Checks the IssueRecord invariants. Empty result iff all hold.
std::vector<ValidationEntry> validate(const IssueRecord& issue);

}  // namespace itelint

#endif  // ITELINT_MODEL_HPP_
