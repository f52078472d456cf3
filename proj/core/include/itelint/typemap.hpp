// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_TYPEMAP_HPP_
#define ITELINT_TYPEMAP_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace itelint {

enum class Activity { Requirements, Development, Maintenance, UserSupport, Other };

std::string_view to_string(Activity activity);
std::optional<Activity> parse_activity(std::string_view name);

struct TypeCode {
  Activity activity = Activity::Other;
  std::string code = "Other";

  friend bool operator==(const TypeCode&, const TypeCode&) = default;
};

/// Raw issue type name to (activity, code). Lookup ignores case and
/// collapses internal whitespace.
class TypeMapper {
 public:
  /// The shipped mapping.
  static const TypeMapper& builtin();
  static TypeMapper from_json(const nlohmann::json& doc);

  TypeCode map(std::string_view raw) const;

  /// Adds or replaces one raw name.
  void add(std::string_view raw, Activity activity, std::string code);

  /// Every code in declaration order, with its activity.
  const std::vector<TypeCode>& codes() const { return codes_; }
  std::optional<Activity> activity_of_code(std::string_view code) const;

 private:
  std::map<std::string, TypeCode> by_name_;
  std::vector<TypeCode> codes_;
};

TypeCode map_issue_type(std::string_view raw);

inline constexpr std::size_t kUsageMinCount = 5;
inline constexpr std::size_t kSmallProjectSize = 50;
inline constexpr double kSmallProjectShare = 0.10;

/// Codes a project counts as using: at least 5 issues, or at least 10% of
/// issues when the project has fewer than 50.
std::set<std::string> usage_set(std::span<const std::string> issue_codes);

struct UsagePattern {
  std::set<std::string> codes;
  std::size_t count = 0;
  double percent = 0;
  double cumulative_percent = 0;
};

/// `project_sets` holds one usage set per project.
std::vector<UsagePattern> cooccurrence_rank(const std::vector<std::set<std::string>>& project_sets);

nlohmann::json to_json(const UsagePattern& pattern);

}  // namespace itelint

#endif  // ITELINT_TYPEMAP_HPP_
