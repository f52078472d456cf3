// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/model.hpp"

#include <algorithm>
#include <chrono>

namespace itelint {
namespace {

struct CodeInfo {
  FieldCode code;
  std::string_view name;
  std::optional<Theme> theme;
  ValueShape shape;
};

constexpr CodeInfo kCodes[] = {
    {FieldCode::Summary, "Summary", Theme::Content, ValueShape::Text},
    {FieldCode::Description, "Description", Theme::Content, ValueShape::Text},
    {FieldCode::Labels, "Labels", Theme::MetaContent, ValueShape::List},
    {FieldCode::Environment, "Environment", Theme::MetaContent, ValueShape::Text},
    {FieldCode::VersionsAffected, "VersionsAffected", Theme::MetaContent, ValueShape::List},
    {FieldCode::VersionsFixed, "VersionsFixed", Theme::MetaContent, ValueShape::List},
    {FieldCode::IssueType, "IssueType", Theme::RepoStructure, ValueShape::Text},
    {FieldCode::Project, "Project", Theme::RepoStructure, ValueShape::Text},
    {FieldCode::Components, "Components", Theme::RepoStructure, ValueShape::List},
    {FieldCode::Parent, "Parent", Theme::RepoStructure, ValueShape::Text},
    {FieldCode::IssueLinks, "IssueLinks", Theme::RepoStructure, ValueShape::None},
    {FieldCode::CreatedDate, "CreatedDate", Theme::Workflow, ValueShape::None},
    {FieldCode::ResolvedDate, "ResolvedDate", Theme::Workflow, ValueShape::None},
    {FieldCode::Status, "Status", Theme::Workflow, ValueShape::Text},
    {FieldCode::Priority, "Priority", Theme::Workflow, ValueShape::Text},
    {FieldCode::Resolution, "Resolution", Theme::Workflow, ValueShape::Text},
    {FieldCode::Creator, "Creator", Theme::Community, ValueShape::Person},
    {FieldCode::Reporter, "Reporter", Theme::Community, ValueShape::Person},
    {FieldCode::Assignee, "Assignee", Theme::Community, ValueShape::Person},
    {FieldCode::Comments, "Comments", Theme::Community, ValueShape::None},
    {FieldCode::Other, "Other", std::nullopt, ValueShape::None},
};

constexpr std::string_view kThemeNames[] = {"Content", "MetaContent", "RepoStructure", "Workflow",
                                            "Community"};

const CodeInfo& info(FieldCode code) { return kCodes[static_cast<std::size_t>(code)]; }

constexpr auto kCreationalTolerance = std::chrono::seconds(2);

}  // namespace

std::string_view to_string(FieldCode code) { return info(code).name; }

std::string_view to_string(Theme theme) { return kThemeNames[static_cast<std::size_t>(theme)]; }

std::optional<FieldCode> parse_field_code(std::string_view name) {
  for (const auto& c : kCodes) {
    if (c.name == name) return c.code;
  }
  return std::nullopt;
}

std::optional<Theme> parse_theme(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kThemeNames); ++i) {
    if (kThemeNames[i] == name) return static_cast<Theme>(i);
  }
  return std::nullopt;
}

std::optional<Theme> theme_of(FieldCode code) { return info(code).theme; }

ValueShape shape_of(FieldCode code) { return info(code).shape; }

const std::array<FieldCode, kCanonicalFieldCount>& canonical_fields() {
  static const auto kAll = [] {
    std::array<FieldCode, kCanonicalFieldCount> a{};
    for (std::size_t i = 0; i < kCanonicalFieldCount; ++i) a[i] = static_cast<FieldCode>(i);
    return a;
  }();
  return kAll;
}

const std::string* text_of(const FieldMap& fields, FieldCode code) {
  auto it = fields.find(code);
  return it == fields.end() ? nullptr : std::get_if<std::string>(&it->second);
}

const std::vector<std::string>* list_of(const FieldMap& fields, FieldCode code) {
  auto it = fields.find(code);
  return it == fields.end() ? nullptr : std::get_if<std::vector<std::string>>(&it->second);
}

const Person* person_of(const FieldMap& fields, FieldCode code) {
  auto it = fields.find(code);
  return it == fields.end() ? nullptr : std::get_if<Person>(&it->second);
}

const std::string* IssueRecord::text(FieldCode code) const { return text_of(fields, code); }
const std::vector<std::string>* IssueRecord::list(FieldCode code) const { return list_of(fields, code); }
const Person* IssueRecord::person(FieldCode code) const { return person_of(fields, code); }

void set_field(FieldMap& fields, FieldCode code, FieldValue value) {
  bool empty = std::visit(
      [](auto& v) {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::string>) {
          return v.empty();
        } else if constexpr (std::is_same_v<V, std::vector<std::string>>) {
          std::erase(v, std::string{});
          std::sort(v.begin(), v.end());
          v.erase(std::unique(v.begin(), v.end()), v.end());
          return v.empty();
        } else {
          if (v.id.empty()) v.id = v.display;
          return v.id.empty();
        }
      },
      value);
  if (empty) {
    fields.erase(code);
  } else {
    fields.insert_or_assign(code, std::move(value));
  }
}

std::vector<ValidationEntry> validate(const IssueRecord& issue) {
  std::vector<ValidationEntry> out;
  if (issue.key.empty()) out.push_back({"key", "key-empty", "issue key must be non-empty"});
  if (issue.resolved && *issue.resolved < issue.created) {
    out.push_back({"resolved", "resolved-before-created", "resolution precedes creation"});
  }
  auto by_time = [](const auto& a, const auto& b) { return a.when < b.when; };
  if (!std::is_sorted(issue.changelog.begin(), issue.changelog.end(), by_time)) {
    out.push_back({"changelog", "changelog-unsorted", "events not ascending by timestamp"});
  }
  if (!std::is_sorted(issue.comments.begin(), issue.comments.end(), by_time)) {
    out.push_back({"comments", "comments-unsorted", "comments not ascending by timestamp"});
  }
  for (const auto& c : issue.comments) {
    if (c.when < issue.created) {
      out.push_back({"comments", "comment-before-created", "comment precedes issue creation"});
      break;
    }
  }
  for (FieldCode code : {FieldCode::Assignee, FieldCode::Reporter, FieldCode::Creator}) {
    if (const Person* p = issue.person(code); p && p->id.empty()) {
      out.push_back({std::string(to_string(code)), "person-id-empty", "person without id"});
    }
  }
  bool bad_author = false;
  for (const auto& e : issue.changelog) bad_author |= e.author && e.author->id.empty();
  for (const auto& c : issue.comments) bad_author |= c.author && c.author->id.empty();
  if (bad_author) out.push_back({"author", "person-id-empty", "author without id"});
  for (const auto& l : issue.links) {
    if (l.target.empty()) {
      out.push_back({"links", "link-target-empty", "issue link without target"});
      break;
    }
  }
  for (const auto& e : issue.changelog) {
    auto delta = e.when - issue.created;
    bool near = delta <= kCreationalTolerance && delta >= -kCreationalTolerance;
    if (e.creational != near) {
      out.push_back({"changelog", "creational-flag-mismatch",
                     "creational flag disagrees with the creation-time tolerance"});
      break;
    }
  }
  return out;
}

}  // namespace itelint
