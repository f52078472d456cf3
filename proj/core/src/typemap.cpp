// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/typemap.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>

#include "itelint/embedded_data.hpp"
#include "itelint/text.hpp"

namespace itelint {

namespace {
constexpr std::string_view kActivityNames[] = {"Requirements", "Development", "Maintenance", "UserSupport",
                                               "Other"};
}  // namespace

std::string_view to_string(Activity activity) { return kActivityNames[static_cast<std::size_t>(activity)]; }

std::optional<Activity> parse_activity(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kActivityNames); ++i) {
    if (text::iequals(kActivityNames[i], name)) return static_cast<Activity>(i);
  }
  return std::nullopt;
}

const TypeMapper& TypeMapper::builtin() {
  static const TypeMapper kMapper = [] {
    auto content = embedded::find("typemap.json");
    if (!content) throw std::logic_error("shipped typemap.json missing");
    return from_json(nlohmann::json::parse(*content));
  }();
  return kMapper;
}

TypeMapper TypeMapper::from_json(const nlohmann::json& doc) {
  TypeMapper m;
  for (const auto& group : doc.at("activities")) {
    auto activity = parse_activity(group.at("activity").get<std::string>());
    if (!activity) {
      throw std::invalid_argument(fmt::format("unknown activity '{}'", group.at("activity").get<std::string>()));
    }
    for (const auto& c : group.at("codes")) {
      std::string code = c.at("code").get<std::string>();
      if (std::none_of(m.codes_.begin(), m.codes_.end(), [&](const TypeCode& t) { return t.code == code; })) {
        m.codes_.push_back({*activity, code});
      }
      for (const auto& name : c.at("names")) m.add(name.get<std::string>(), *activity, code);
      m.add(code, *activity, code);
    }
  }
  return m;
}

void TypeMapper::add(std::string_view raw, Activity activity, std::string code) {
  if (std::none_of(codes_.begin(), codes_.end(), [&](const TypeCode& t) { return t.code == code; })) {
    codes_.push_back({activity, code});
  }
  by_name_.insert_or_assign(text::fold_name(raw), TypeCode{activity, std::move(code)});
}

TypeCode TypeMapper::map(std::string_view raw) const {
  auto it = by_name_.find(text::fold_name(raw));
  return it == by_name_.end() ? TypeCode{} : it->second;
}

std::optional<Activity> TypeMapper::activity_of_code(std::string_view code) const {
  for (const auto& t : codes_) {
    if (t.code == code) return t.activity;
  }
  return std::nullopt;
}

TypeCode map_issue_type(std::string_view raw) { return TypeMapper::builtin().map(raw); }

std::set<std::string> usage_set(std::span<const std::string> issue_codes) {
  std::map<std::string, std::size_t> counts;
  for (const auto& c : issue_codes) ++counts[c];
  const std::size_t size = issue_codes.size();
  std::set<std::string> out;
  for (const auto& [code, n] : counts) {
    bool frequent = n >= kUsageMinCount;
    bool share = size < kSmallProjectSize && static_cast<double>(n) >= kSmallProjectShare * static_cast<double>(size);
    if (frequent || share) out.insert(code);
  }
  return out;
}

std::vector<UsagePattern> cooccurrence_rank(const std::vector<std::set<std::string>>& project_sets) {
  std::map<std::set<std::string>, std::size_t> counts;
  for (const auto& s : project_sets) ++counts[s];
  std::vector<UsagePattern> out;
  for (const auto& [codes, n] : counts) out.push_back({codes, n, 0, 0});
  // std::set compares lexicographically, so the stable sort keeps the tie order.
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.count > b.count; });
  const double total = static_cast<double>(project_sets.size());
  double running = 0;
  for (auto& p : out) {
    p.percent = 100.0 * static_cast<double>(p.count) / total;
    running += p.percent;
    p.cumulative_percent = running;
  }
  return out;
}

nlohmann::json to_json(const UsagePattern& pattern) {
  return {{"codes", pattern.codes},
          {"count", pattern.count},
          {"percent", pattern.percent},
          {"cumulative_percent", pattern.cumulative_percent}};
}

}  // namespace itelint
