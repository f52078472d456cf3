// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/analytics.hpp"

#include <algorithm>
#include <set>

#include "itelint/text.hpp"
#include "itelint/timeutil.hpp"

namespace itelint {
namespace {

constexpr std::string_view kAll = "All";
constexpr OwnershipClass kOwnerClasses[] = {OwnershipClass::CRA, OwnershipClass::CRa, OwnershipClass::crA,
                                            OwnershipClass::cRa, OwnershipClass::Cra, OwnershipClass::cRA,
                                            OwnershipClass::CrA};

double median_of(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  const std::size_t n = hi - lo;
  const std::size_t mid = lo + n / 2;
  return n % 2 ? v[mid] : (v[mid - 1] + v[mid]) / 2.0;
}

bool counted(const ChangeEvent& e) { return !e.creational && e.field != FieldCode::Other; }

std::string theme_label(FieldCode code) {
  auto t = theme_of(code);
  return t ? std::string(to_string(*t)) : std::string("Other");
}

std::string type_label(const IssueRecord& issue, GroupBy g) {
  TypeCode tc = issue_type_of(issue);
  return g == GroupBy::Code ? tc.code : std::string(to_string(tc.activity));
}

std::optional<double> percent(std::size_t part, std::size_t whole) {
  if (whole == 0) return std::nullopt;
  return 100.0 * static_cast<double>(part) / static_cast<double>(whole);
}

nlohmann::json opt_json(std::optional<double> v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

}  // namespace

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw EmptyInput("box statistics need at least one value");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  BoxStats s;
  s.n = n;
  s.median = median_of(values, 0, n);
  if (n == 1) {
    s.q1 = s.q3 = s.median;
  } else {
    const std::size_t half = n / 2;
    s.q1 = median_of(values, 0, half);
    s.q3 = median_of(values, n - half, n);
  }
  const double lo_fence = s.q1 - 1.5 * s.iqr();
  const double hi_fence = s.q3 + 1.5 * s.iqr();
  auto lo = std::find_if(values.begin(), values.end(), [&](double v) { return v >= lo_fence; });
  auto hi = std::find_if(values.rbegin(), values.rend(), [&](double v) { return v <= hi_fence; });
  s.lower_whisker = std::min(*lo, s.q1);
  s.upper_whisker = std::max(*hi, s.q3);
  return s;
}

nlohmann::json to_json(const BoxStats& s) {
  return {{"n", s.n},
          {"median", s.median},
          {"q1", s.q1},
          {"q3", s.q3},
          {"lower_whisker", s.lower_whisker},
          {"upper_whisker", s.upper_whisker}};
}

TypeCode issue_type_of(const IssueRecord& issue, const TypeMapper& types) {
  const std::string* raw = issue.text(FieldCode::IssueType);
  return types.map(raw ? *raw : issue.raw_issue_type);
}

std::string_view to_string(GroupBy g) {
  switch (g) {
    case GroupBy::Activity: return "activity";
    case GroupBy::Theme: return "theme";
    case GroupBy::Code: return "code";
  }
  return "";
}

std::optional<GroupBy> parse_group_by(std::string_view name) {
  for (GroupBy g : {GroupBy::Activity, GroupBy::Theme, GroupBy::Code}) {
    if (text::iequals(to_string(g), name)) return g;
  }
  return std::nullopt;
}

Distribution evolution_counts(const Corpus& corpus, GroupBy group_by) {
  Distribution out;
  for (const auto& issue : corpus.issues()) {
    if (group_by == GroupBy::Theme) {
      std::map<std::string, double> per_theme;
      for (Theme t : {Theme::Content, Theme::MetaContent, Theme::RepoStructure, Theme::Workflow, Theme::Community}) {
        per_theme[std::string(to_string(t))] = 0;
      }
      for (const auto& e : issue.changelog) {
        if (counted(e)) per_theme[theme_label(e.field)] += 1;
      }
      for (const auto& [label, n] : per_theme) out[label].push_back(n);
      continue;
    }
    const auto n = std::count_if(issue.changelog.begin(), issue.changelog.end(), counted);
    out[type_label(issue, group_by)].push_back(static_cast<double>(n));
  }
  return out;
}

Distribution evolution_time_offsets(const Corpus& corpus, GroupBy group_by) {
  Distribution out;
  for (const auto& issue : corpus.issues()) {
    const std::string label = group_by == GroupBy::Theme ? std::string{} : type_label(issue, group_by);
    for (const auto& e : issue.changelog) {
      if (!counted(e)) continue;
      out[group_by == GroupBy::Theme ? theme_label(e.field) : label].push_back(to_days(e.when - issue.created));
    }
  }
  return out;
}

std::map<std::string, BoxStats> summarize(const Distribution& d) {
  std::map<std::string, BoxStats> out;
  for (const auto& [label, values] : d) {
    if (!values.empty()) out.emplace(label, box_stats(values));
  }
  return out;
}

std::optional<double> OwnershipColumn::owner_percent() const { return percent(owner, owner + non_owner); }
std::optional<double> OwnershipColumn::non_owner_percent() const { return percent(non_owner, owner + non_owner); }
std::optional<double> OwnershipColumn::class_percent(OwnershipClass c) const {
  auto it = classes.find(c);
  return percent(it == classes.end() ? 0 : it->second, owner);
}

std::vector<OwnershipColumn> ownership_table(const Corpus& corpus) {
  std::map<std::pair<std::string, std::string>, OwnershipColumn> cols;
  auto column = [&](const std::string& activity, const std::string& theme) -> OwnershipColumn& {
    auto [it, fresh] = cols.try_emplace({activity, theme});
    if (fresh) {
      it->second.activity = activity;
      it->second.theme = theme;
    }
    return it->second;
  };
  column(std::string(kAll), std::string(kAll));
  for (const auto& issue : corpus.issues()) {
    const std::string activity(to_string(issue_type_of(issue).activity));
    const auto roles = classify_all(issue);
    std::size_t k = 0;
    for (const auto& e : issue.changelog) {
      if (e.creational) continue;
      const OwnershipRole& role = roles[k++];
      if (e.field == FieldCode::Other) continue;
      const std::string theme = theme_label(e.field);
      for (auto* c : {&column(activity, theme), &column(activity, std::string(kAll)),
                      &column(std::string(kAll), theme), &column(std::string(kAll), std::string(kAll))}) {
        if (role.unknown_author) {
          ++c->unknown;
        } else if (role.owner()) {
          ++c->owner;
          ++c->classes[role.cls()];
        } else {
          ++c->non_owner;
        }
      }
    }
  }
  std::vector<OwnershipColumn> out;
  for (auto& [key, c] : cols) out.push_back(std::move(c));
  return out;
}

nlohmann::json to_json(const OwnershipColumn& c) {
  nlohmann::json classes = nlohmann::json::object();
  for (OwnershipClass k : kOwnerClasses) classes[std::string(to_string(k))] = opt_json(c.class_percent(k));
  return {{"activity", c.activity},
          {"theme", c.theme},
          {"events", c.owner + c.non_owner},
          {"unknown_author", c.unknown},
          {"Owner", opt_json(c.owner_percent())},
          {"Non-Owner", opt_json(c.non_owner_percent())},
          {"owner_classes", std::move(classes)}};
}

std::vector<UsagePattern> cooccurrence_rank(const Corpus& corpus, const TypeMapper& types) {
  std::vector<std::set<std::string>> sets;
  for (const auto& [repo, projects] : corpus.index()) {
    for (const auto& [project, indices] : projects) {
      std::vector<std::string> codes;
      for (auto i : indices) codes.push_back(issue_type_of(corpus.issues()[i], types).code);
      std::set<std::string> used = usage_set(codes);
      std::erase_if(used, [&](const std::string& code) {
        auto a = types.activity_of_code(code);
        return !a || *a == Activity::UserSupport || *a == Activity::Other;
      });
      sets.push_back(std::move(used));
    }
  }
  return cooccurrence_rank(sets);
}

}  // namespace itelint
