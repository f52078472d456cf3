// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/detectors.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "itelint/evolution.hpp"
#include "itelint/text.hpp"
#include "itelint/timeutil.hpp"

namespace itelint {
namespace {

using nlohmann::json;
using Strings = std::vector<std::string>;

const Strings kBugReports = {"BugReport"};
const Strings kAllTypes = {"All"};
const Strings kClosed = {"Closed", "Done", "Resolved"};
const Strings kFixed = {"Fixed", "Done", "Resolved"};
const Strings kSevere = {"Critical",   "Blocker",      "P1: Critical", "Highest",       "Critical - P2", "Urgent",
                         "Blocker - P1", "P1",         "2 - Critical", "P1-Urgent",     "P0",            "1 - Blocker",
                         "P2-Critical", "P1-Blocker", "Blocking",     "Severe"};
const Strings kPropertyFields = {"IssueType", "Status", "Priority", "Resolution"};

ParamSpec types_param(const Strings& def) {
  return {"issue_types", ParamType::StringList, def,
          "issue type codes, activity names or All that the detector applies to"};
}
ParamSpec closed_param() {
  return {"closed_statuses", ParamType::StringList, kClosed, "status values that count as closed"};
}
ParamSpec fixed_param() {
  return {"fixed_resolutions", ParamType::StringList, kFixed, "resolution values that count as fixed"};
}
ParamSpec invalid_param(Strings def) {
  return {"invalid_values", ParamType::StringList, std::move(def), "placeholder values treated as unset"};
}
ParamSpec collapse_param() {
  return {"collapse", ParamType::Duration, minutes(5), "changes closer than this are counted as one"};
}

std::vector<DetectorInfo> build_registry() {
  std::vector<DetectorInfo> r;
  auto missing = [&](std::string id, std::vector<std::string> bp, std::string what, Strings invalid) {
    r.push_back({std::move(id),
                 std::move(bp),
                 DetectorScope::Issue,
                 fmt::format("fixed and closed issue without {}", what),
                 {types_param(kBugReports), closed_param(), fixed_param(), invalid_param(std::move(invalid))},
                 true,
                 5});
  };
  missing("missing_assignee", {"BP08"}, "an assignee", {"unassigned@gcc.gnu.org"});
  missing("missing_priority", {"BP09"}, "a priority", {"None", "Not Evaluated", "_"});
  missing("missing_severity", {"BP10"}, "a severity", {"N/A", "-"});
  r.back().params.push_back({"custom_field", ParamType::String, std::string("Severity"),
                             "name of the custom field holding severity"});
  r.back().enabled_by_default = false;
  missing("missing_environment", {"BP11"}, "an environment", {});
  missing("missing_components", {}, "components", {});

  r.push_back({"reassignments",
               {"BP18"},
               DetectorScope::Issue,
               "assignee changed more often than the threshold after creation",
               {types_param(kBugReports),
                {"threshold", ParamType::Int, 1LL, "allowed number of post-creation assignee changes"},
                collapse_param()},
               true,
               5});
  r.push_back({"team_assignment",
               {"BP03"},
               DetectorScope::Issue,
               "assignee is a team rather than an individual",
               {types_param(kBugReports),
                {"keywords", ParamType::StringList, Strings{"team", "group", "backlog"},
                 "assignee name fragments that indicate a team"}},
               true,
               5});
  r.push_back({"nonassignee_resolution",
               {"BP12"},
               DetectorScope::Issue,
               "resolved by someone other than the assignee",
               {types_param(kBugReports), closed_param()},
               true,
               5});
  r.push_back({"slow_severe_resolution",
               {"BP20"},
               DetectorScope::Issue,
               "severe issue resolved later than the window",
               {types_param(kBugReports),
                {"severe_priorities", ParamType::StringList, kSevere, "priority values that count as severe"},
                {"window", ParamType::Duration, days(7), "maximum time from creation to resolution"},
                {"include_open", ParamType::Bool, false, "also flag open severe issues older than the window"}},
               true,
               5});
  r.push_back({"activity_gap",
               {"BP13", "BP14"},
               DetectorScope::Issue,
               "no activity for longer than the allowed gap before resolution",
               {types_param(kBugReports),
                {"max_gap", ParamType::Duration, days(90), "longest allowed gap between activities"}},
               true,
               5});
  r.push_back({"reopen",
               {"BP19"},
               DetectorScope::Issue,
               "status left a closed state",
               {types_param(kBugReports), closed_param(),
                {"reopened_values", ParamType::StringList, Strings{"Reopened"}, "status values that mean reopened"},
                collapse_param()},
               true,
               5});
  r.push_back({"no_comments",
               {"BP15"},
               DetectorScope::Issue,
               "closed issue without comments",
               {types_param(kBugReports), closed_param()},
               true,
               5});
  r.push_back({"sufficient_description",
               {"BP04"},
               DetectorScope::Issue,
               "description shorter than the minimum word count",
               {types_param(kAllTypes), {"min_words", ParamType::Int, 10LL, "minimum description words"}},
               true,
               5});
  r.push_back({"succinct_description",
               {"BP05"},
               DetectorScope::Issue,
               "description longer than the maximum word count",
               {types_param(kAllTypes), {"max_words", ParamType::Int, 250LL, "maximum description words"}},
               true,
               5});
  r.push_back({"summary_length",
               {},
               DetectorScope::Issue,
               "summary length outside the character range",
               {types_param(kAllTypes),
                {"min_chars", ParamType::Int, 39LL, "minimum summary characters"},
                {"max_chars", ParamType::Int, 70LL, "maximum summary characters"}},
               true,
               5});
  auto cycle = [&](std::string id, std::string bp, std::string what) {
    r.push_back({std::move(id),
                 {std::move(bp)},
                 DetectorScope::Issue,
                 fmt::format("{} returned to an earlier value", what),
                 {types_param(kAllTypes),
                  {"allowed_cycles", ParamType::StringList, Strings{}, "value pairs \"A|B\" allowed to alternate"}},
                 true,
                 5});
  };
  cycle("status_ping_pong", "BP06", "status");
  cycle("assignee_ping_pong", "BP07", "assignee");
  r.push_back({"inconsistent_properties",
               {"BP17"},
               DetectorScope::ITS,
               "text mentions a property field together with one of its values",
               {types_param(kAllTypes),
                {"fields", ParamType::StringList, kPropertyFields, "property fields to look for"}},
               true,
               5});
  return r;
}

bool in_list(const Strings& list, std::string_view value) {
  const auto v = text::trim(value);
  return std::any_of(list.begin(), list.end(), [&](const std::string& s) { return text::iequals(text::trim(s), v); });
}

bool type_matches(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  const Strings& wanted = params.get_list("issue_types");
  const std::string* raw = issue.text(FieldCode::IssueType);
  const TypeCode tc = ctx.types->map(raw ? *raw : issue.raw_issue_type);
  for (const auto& w : wanted) {
    if (text::iequals(w, "All") || text::iequals(w, tc.code) || text::iequals(w, to_string(tc.activity))) return true;
  }
  return false;
}

std::string text_or_empty(const IssueRecord& issue, FieldCode code) {
  const std::string* s = issue.text(code);
  return s ? *s : std::string{};
}

bool is_closed(const IssueRecord& issue, const Params& params) {
  const std::string* status = issue.text(FieldCode::Status);
  return status && in_list(params.get_list("closed_statuses"), *status);
}

bool is_fixed(const IssueRecord& issue, const Params& params) {
  const std::string* res = issue.text(FieldCode::Resolution);
  return res && in_list(params.get_list("fixed_resolutions"), *res);
}

json opt(const std::string* s) { return s ? json(*s) : json(nullptr); }

Violation make(const IssueRecord& issue, const DetectContext& ctx, std::string id, std::string explanation,
               json evidence) {
  return {std::move(id), issue.key, issue.project, ctx.now, std::move(explanation), std::move(evidence)};
}

const std::string* custom_value(const IssueRecord& issue, const std::string& name) {
  if (auto it = issue.custom.find(name); it != issue.custom.end()) return &it->second;
  for (const auto& [k, v] : issue.custom) {
    if (text::iequals(text::trim(k), text::trim(name))) return &v;
  }
  return nullptr;
}

std::string_view missing_id(MissingField f) {
  switch (f) {
    case MissingField::Assignee: return "missing_assignee";
    case MissingField::Priority: return "missing_priority";
    case MissingField::Severity: return "missing_severity";
    case MissingField::Environment: return "missing_environment";
    case MissingField::Components: return "missing_components";
  }
  return "";
}

// Post-creational events on one field, in timeline order.
std::vector<const ChangeEvent*> later_events(const IssueRecord& issue, FieldCode field) {
  std::vector<const ChangeEvent*> out;
  for (const auto& e : issue.changelog) {
    if (!e.creational && e.field == field) out.push_back(&e);
  }
  return out;
}

std::vector<Timestamp> times_of(const std::vector<const ChangeEvent*>& events) {
  std::vector<Timestamp> out;
  for (const auto* e : events) out.push_back(e->when);
  return out;
}

std::optional<std::string> person_key(const std::optional<std::string>& display, const std::optional<std::string>& id) {
  if (id) return id;
  return display;
}

bool pair_allowed(const Strings& allowed, const std::string& a, const std::string& b) {
  for (const auto& entry : allowed) {
    auto bar = entry.find('|');
    if (bar == std::string::npos) continue;
    auto x = text::trim(std::string_view(entry).substr(0, bar));
    auto y = text::trim(std::string_view(entry).substr(bar + 1));
    if ((text::iequals(x, a) && text::iequals(y, b)) || (text::iequals(x, b) && text::iequals(y, a))) return true;
  }
  return false;
}

// Field-name tokens used by the property consistency search.
Strings field_tokens(FieldCode code) {
  Strings out{std::string(to_string(code))};
  for (const auto& [name, c] : FieldCodebook::builtin().names()) {
    if (c == code) out.push_back(name);
  }
  return out;
}

}  // namespace

const std::vector<DetectorInfo>& registry() {
  static const std::vector<DetectorInfo> kRegistry = build_registry();
  return kRegistry;
}

const DetectorInfo& detector_info(std::string_view id) {
  for (const auto& d : registry()) {
    if (d.id == id) return d;
  }
  throw UnknownDetectorId(fmt::format("no detector with id '{}'", id));
}

json to_json(const Violation& v) {
  return {{"detector_id", v.detector_id}, {"issue_key", v.issue_key},     {"project", v.project},
          {"basis", format_timestamp(v.basis)}, {"explanation", v.explanation}, {"evidence", v.evidence}};
}

std::vector<std::pair<std::size_t, std::size_t>> collapse_runs(const std::vector<Timestamp>& times, Duration window) {
  std::vector<std::pair<std::size_t, std::size_t>> runs;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!runs.empty() && times[i] - times[i - 1] < window) {
      runs.back().second = i;
    } else {
      runs.emplace_back(i, i);
    }
  }
  return runs;
}

Evaluation detect_missing_field(const IssueRecord& issue, MissingField field, const Params& params,
                                const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx) || !is_closed(issue, params) || !is_fixed(issue, params)) return out;
  out.applicable = true;
  const Strings& invalid = params.get_list("invalid_values");
  const std::string id(missing_id(field));
  json value = nullptr;
  bool missing = false;
  switch (field) {
    case MissingField::Assignee: {
      const Person* p = issue.person(FieldCode::Assignee);
      missing = !p || in_list(invalid, p->id) || in_list(invalid, p->display);
      if (p) value = p->id;
      break;
    }
    case MissingField::Priority:
    case MissingField::Environment: {
      const std::string* s = issue.text(field == MissingField::Priority ? FieldCode::Priority : FieldCode::Environment);
      missing = !s || text::trim(*s).empty() || in_list(invalid, *s);
      value = opt(s);
      break;
    }
    case MissingField::Severity: {
      const std::string* s = custom_value(issue, params.get_string("custom_field"));
      missing = !s || text::trim(*s).empty() || in_list(invalid, *s);
      value = opt(s);
      break;
    }
    case MissingField::Components: {
      const auto* l = issue.list(FieldCode::Components);
      missing = !l || std::all_of(l->begin(), l->end(), [&](const std::string& c) { return in_list(invalid, c); });
      if (l) value = *l;
      break;
    }
  }
  if (missing) {
    const std::string name = id.substr(std::string("missing_").size());
    out.violations.push_back(make(issue, ctx, id,
                                  value.is_null() ? fmt::format("fixed and closed, but {} is not set", name)
                                                  : fmt::format("fixed and closed, but {} is a placeholder", name),
                                  {{"status", opt(issue.text(FieldCode::Status))},
                                   {"resolution", opt(issue.text(FieldCode::Resolution))},
                                   {"value", value}}));
  }
  return out;
}

Evaluation detect_reassignments(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx)) return out;
  out.applicable = true;
  auto events = later_events(issue, FieldCode::Assignee);
  auto runs = collapse_runs(times_of(events), params.get_duration("collapse"));
  const auto threshold = params.get_int("threshold");
  if (static_cast<long long>(runs.size()) > threshold) {
    json changes = json::array();
    for (const auto& [first, last] : runs) {
      changes.push_back({{"when", format_timestamp(events[last]->when)},
                         {"from", events[first]->from_id ? json(*events[first]->from_id) : opt(events[first]->from ? &*events[first]->from : nullptr)},
                         {"to", events[last]->to_id ? json(*events[last]->to_id) : opt(events[last]->to ? &*events[last]->to : nullptr)}});
    }
    out.violations.push_back(make(issue, ctx, "reassignments",
                                  fmt::format("assignee changed {} times after creation (allowed {})", runs.size(),
                                              threshold),
                                  {{"count", runs.size()}, {"threshold", threshold}, {"changes", std::move(changes)}}));
  }
  return out;
}

Evaluation detect_team_assignment(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  const Person* assignee = issue.person(FieldCode::Assignee);
  if (!type_matches(issue, params, ctx) || !assignee) return out;
  out.applicable = true;
  for (const auto& kw : params.get_list("keywords")) {
    if (!kw.empty() && text::icontains(assignee->display, kw)) {
      out.violations.push_back(make(issue, ctx, "team_assignment",
                                    fmt::format("assigned to '{}', which looks like a team", assignee->display),
                                    {{"assignee", assignee->display}, {"keyword", kw}}));
      break;
    }
  }
  return out;
}

Evaluation detect_nonassignee_resolution(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx) || !issue.resolved) return out;
  const ChangeEvent* resolving = nullptr;
  for (const auto& e : issue.changelog) {
    if (e.field == FieldCode::Resolution && e.to) resolving = &e;
  }
  if (!resolving) {
    for (const auto& e : issue.changelog) {
      if (e.field == FieldCode::Status && e.to && in_list(params.get_list("closed_statuses"), *e.to)) resolving = &e;
    }
  }
  if (!resolving || !resolving->author) return out;
  IssueState at = state_at(issue, std::max(resolving->when, issue.created));
  const Person* assignee = person_of(at.values.fields, FieldCode::Assignee);
  if (!assignee) return out;
  out.applicable = true;
  if (!(*assignee == *resolving->author)) {
    out.violations.push_back(make(issue, ctx, "nonassignee_resolution",
                                  fmt::format("resolved by {} while assigned to {}", resolving->author->id, assignee->id),
                                  {{"resolver", resolving->author->id},
                                   {"assignee", assignee->id},
                                   {"when", format_timestamp(resolving->when)}}));
  }
  return out;
}

Evaluation detect_slow_severe_resolution(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  const std::string* priority = issue.text(FieldCode::Priority);
  if (!type_matches(issue, params, ctx) || !priority || !in_list(params.get_list("severe_priorities"), *priority)) {
    return out;
  }
  const bool include_open = params.get_bool("include_open");
  if (!issue.resolved && !include_open) return out;
  out.applicable = true;
  const Timestamp end = issue.resolved ? *issue.resolved : ctx.now;
  const Duration window = params.get_duration("window");
  if (end - issue.created > window) {
    out.violations.push_back(make(issue, ctx, "slow_severe_resolution",
                                  fmt::format("{} issue {} after {:.1f} days (window {:.1f})", *priority,
                                              issue.resolved ? "resolved" : "still open",
                                              to_days(end - issue.created), to_days(window)),
                                  {{"priority", *priority},
                                   {"created", format_timestamp(issue.created)},
                                   {"end", format_timestamp(end)},
                                   {"resolved", issue.resolved.has_value()},
                                   {"days", to_days(end - issue.created)}}));
  }
  return out;
}

Evaluation detect_activity_gap(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx)) return out;
  out.applicable = true;
  const Timestamp end = issue.resolved ? *issue.resolved : std::max(ctx.now, issue.created);
  std::vector<Timestamp> points{issue.created, end};
  for (const auto& e : issue.changelog) {
    if (e.when <= end) points.push_back(e.when);
  }
  for (const auto& c : issue.comments) {
    if (c.when <= end) points.push_back(c.when);
  }
  std::sort(points.begin(), points.end());
  Duration widest{0};
  std::size_t at = 0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (points[i] - points[i - 1] > widest) {
      widest = points[i] - points[i - 1];
      at = i;
    }
  }
  const Duration max_gap = params.get_duration("max_gap");
  if (widest > max_gap) {
    out.violations.push_back(make(issue, ctx, "activity_gap",
                                  fmt::format("no activity for {:.1f} days (allowed {:.1f})", to_days(widest),
                                              to_days(max_gap)),
                                  {{"gap_days", to_days(widest)},
                                   {"from", format_timestamp(points[at - 1])},
                                   {"to", format_timestamp(points[at])},
                                   {"resolved", issue.resolved.has_value()}}));
  }
  return out;
}

Evaluation detect_reopen(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx)) return out;
  out.applicable = true;
  const Strings& closed = params.get_list("closed_statuses");
  const Strings& reopened = params.get_list("reopened_values");
  auto events = later_events(issue, FieldCode::Status);
  for (const auto& [first, last] : collapse_runs(times_of(events), params.get_duration("collapse"))) {
    const std::string from = events[first]->from.value_or("");
    const std::string to = events[last]->to.value_or("");
    if (text::iequals(from, to)) continue;
    const bool leaves_closed = !from.empty() && in_list(closed, from) && !in_list(closed, to);
    const bool enters_reopened = !to.empty() && in_list(reopened, to);
    if (leaves_closed || enters_reopened) {
      out.violations.push_back(make(issue, ctx, "reopen",
                                    fmt::format("status went from '{}' to '{}'", from, to),
                                    {{"from", from}, {"to", to}, {"when", format_timestamp(events[last]->when)}}));
    }
  }
  return out;
}

Evaluation detect_no_comments(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx) || !is_closed(issue, params)) return out;
  out.applicable = true;
  if (issue.comments.empty()) {
    out.violations.push_back(make(issue, ctx, "no_comments", "closed without any comment",
                                  {{"status", opt(issue.text(FieldCode::Status))}, {"comments", 0}}));
  }
  return out;
}

Evaluation detect_text_length(const IssueRecord& issue, TextRule rule, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx)) return out;
  out.applicable = true;
  switch (rule) {
    case TextRule::SufficientDescription: {
      const auto words = text::word_count(text_or_empty(issue, FieldCode::Description));
      const auto min = params.get_int("min_words");
      if (static_cast<long long>(words) < min) {
        out.violations.push_back(make(issue, ctx, "sufficient_description",
                                      fmt::format("description has {} words (minimum {})", words, min),
                                      {{"words", words}, {"min_words", min}}));
      }
      break;
    }
    case TextRule::SuccinctDescription: {
      const auto words = text::word_count(text_or_empty(issue, FieldCode::Description));
      const auto max = params.get_int("max_words");
      if (static_cast<long long>(words) > max) {
        out.violations.push_back(make(issue, ctx, "succinct_description",
                                      fmt::format("description has {} words (maximum {})", words, max),
                                      {{"words", words}, {"max_words", max}}));
      }
      break;
    }
    case TextRule::SummaryLength: {
      const std::string summary = text_or_empty(issue, FieldCode::Summary);
      const auto chars = static_cast<long long>(text::char_count(text::trim(summary)));
      const auto min = params.get_int("min_chars");
      const auto max = params.get_int("max_chars");
      if (chars < min || chars > max) {
        out.violations.push_back(make(issue, ctx, "summary_length",
                                      fmt::format("summary has {} characters (expected {}..{})", chars, min, max),
                                      {{"chars", chars}, {"min_chars", min}, {"max_chars", max}}));
      }
      break;
    }
  }
  return out;
}

Evaluation detect_cycles(const IssueRecord& issue, CycleField field, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx)) return out;
  out.applicable = true;
  const FieldCode code = field == CycleField::Status ? FieldCode::Status : FieldCode::Assignee;
  const std::string id = field == CycleField::Status ? "status_ping_pong" : "assignee_ping_pong";

  std::vector<std::pair<std::string, Timestamp>> seq;
  auto push = [&](const std::optional<std::string>& v, Timestamp when) {
    if (!v || v->empty()) return;
    if (!seq.empty() && seq.back().first == *v) return;
    seq.emplace_back(*v, when);
  };
  FieldState initial = creation_snapshot(issue);
  if (code == FieldCode::Status) {
    const std::string* s = text_of(initial.fields, code);
    push(s ? std::optional(*s) : std::nullopt, issue.created);
  } else {
    const Person* p = person_of(initial.fields, code);
    push(p ? std::optional(p->id) : std::nullopt, issue.created);
  }
  for (const auto* e : later_events(issue, code)) {
    push(code == FieldCode::Status ? e->to : person_key(e->to, e->to_id), e->when);
  }

  const Strings& allowed = params.get_list("allowed_cycles");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& [value, when] = seq[i];
    if (i > 0 && seen.count(value) && !pair_allowed(allowed, seq[i - 1].first, value)) {
      out.violations.push_back(make(issue, ctx, id,
                                    fmt::format("{} returned to '{}' from '{}'", to_string(code), value,
                                                seq[i - 1].first),
                                    {{"value", value}, {"previous", seq[i - 1].first}, {"when", format_timestamp(when)}}));
    }
    seen.insert(value);
  }
  return out;
}

ValueUniverse build_universe(const std::vector<const IssueRecord*>& issues) {
  ValueUniverse u;
  const FieldCode codes[] = {FieldCode::IssueType, FieldCode::Status, FieldCode::Priority, FieldCode::Resolution};
  auto add = [&](FieldCode code, const std::optional<std::string>& v) {
    if (v && !text::trim(*v).empty()) u.values[code].insert(std::string(text::trim(*v)));
  };
  for (const IssueRecord* issue : issues) {
    FieldState initial = creation_snapshot(*issue);
    for (FieldCode code : codes) {
      u.values.try_emplace(code);
      if (const std::string* s = issue->text(code)) add(code, *s);
      if (const std::string* s = text_of(initial.fields, code)) add(code, *s);
    }
    for (const auto& e : issue->changelog) {
      if (std::find(std::begin(codes), std::end(codes), e.field) == std::end(codes)) continue;
      add(e.field, e.from);
      add(e.field, e.to);
    }
  }
  return u;
}

Evaluation detect_inconsistent_properties(const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  Evaluation out;
  if (!type_matches(issue, params, ctx) || !ctx.universe) return out;
  out.applicable = true;
  std::vector<std::pair<FieldCode, Strings>> fields;
  for (const auto& name : params.get_list("fields")) {
    auto code = parse_field_code(name);
    if (!code) code = unify_field_name(name);
    if (*code == FieldCode::Other) continue;
    fields.emplace_back(*code, field_tokens(*code));
  }
  auto lowered = [](const Strings& in) {
    Strings out;
    for (const auto& s : in) out.push_back(text::to_lower(text::trim(s)));
    return out;
  };
  std::vector<Strings> token_keys;
  std::vector<Strings> value_keys;
  for (const auto& [code, tokens] : fields) {
    token_keys.push_back(lowered(tokens));
    auto it = ctx.universe->values.find(code);
    value_keys.push_back(it == ctx.universe->values.end() ? Strings{} : lowered({it->second.begin(), it->second.end()}));
  }
  auto scan = [&](const std::string& raw, const std::string& source, json where) {
    const std::string body = text::to_lower(raw);
    json matches = json::array();
    for (std::size_t f = 0; f < fields.size(); ++f) {
      const auto& [code, tokens] = fields[f];
      const Strings& keys = token_keys[f];
      auto token = std::find_if(keys.begin(), keys.end(), [&](const auto& t) { return text::contains_word_lower(body, t); });
      if (token == keys.end() || value_keys[f].empty()) continue;
      const auto& values = ctx.universe->values.find(code)->second;
      auto value = values.begin();
      for (std::size_t v = 0; v < value_keys[f].size(); ++v, ++value) {
        if (text::contains_word_lower(body, value_keys[f][v])) {
          matches.push_back({{"field", to_string(code)}, {"token", tokens[token - keys.begin()]}, {"value", *value}});
          break;
        }
      }
    }
    if (matches.empty()) return;
    std::string first = matches[0]["field"].get<std::string>();
    std::string value = matches[0]["value"].get<std::string>();
    where["source"] = source;
    where["matches"] = std::move(matches);
    out.violations.push_back(make(issue, ctx, "inconsistent_properties",
                                  fmt::format("{} mentions {} '{}'; set the field instead", source, first, value),
                                  std::move(where)));
  };
  if (const std::string* d = issue.text(FieldCode::Description)) scan(*d, "description", json::object());
  for (std::size_t i = 0; i < issue.comments.size(); ++i) {
    const auto& c = issue.comments[i];
    scan(c.body, "comment", {{"index", i}, {"when", format_timestamp(c.when)}});
  }
  return out;
}

Evaluation evaluate(std::string_view id, const IssueRecord& issue, const Params& params, const DetectContext& ctx) {
  if (id == "missing_assignee") return detect_missing_field(issue, MissingField::Assignee, params, ctx);
  if (id == "missing_priority") return detect_missing_field(issue, MissingField::Priority, params, ctx);
  if (id == "missing_severity") return detect_missing_field(issue, MissingField::Severity, params, ctx);
  if (id == "missing_environment") return detect_missing_field(issue, MissingField::Environment, params, ctx);
  if (id == "missing_components") return detect_missing_field(issue, MissingField::Components, params, ctx);
  if (id == "reassignments") return detect_reassignments(issue, params, ctx);
  if (id == "team_assignment") return detect_team_assignment(issue, params, ctx);
  if (id == "nonassignee_resolution") return detect_nonassignee_resolution(issue, params, ctx);
  if (id == "slow_severe_resolution") return detect_slow_severe_resolution(issue, params, ctx);
  if (id == "activity_gap") return detect_activity_gap(issue, params, ctx);
  if (id == "reopen") return detect_reopen(issue, params, ctx);
  if (id == "no_comments") return detect_no_comments(issue, params, ctx);
  if (id == "sufficient_description") return detect_text_length(issue, TextRule::SufficientDescription, params, ctx);
  if (id == "succinct_description") return detect_text_length(issue, TextRule::SuccinctDescription, params, ctx);
  if (id == "summary_length") return detect_text_length(issue, TextRule::SummaryLength, params, ctx);
  if (id == "status_ping_pong") return detect_cycles(issue, CycleField::Status, params, ctx);
  if (id == "assignee_ping_pong") return detect_cycles(issue, CycleField::Assignee, params, ctx);
  if (id == "inconsistent_properties") return detect_inconsistent_properties(issue, params, ctx);
  throw UnknownDetectorId(fmt::format("no detector with id '{}'", id));
}

RunResult run_all(const Corpus& input, const ConfigProvider& configs, const RunOptions& options) {
  std::optional<Corpus> truncated;
  if (options.as_of) truncated = truncate(input, *options.as_of);
  const Corpus& corpus = truncated ? *truncated : input;

  RunResult result;
  result.now = corpus.snapshot();
  result.as_of = options.as_of;
  result.project = options.project;
  result.config = configs(options.project);

  std::map<std::string, EffectiveConfig> per_project;
  auto config_for = [&](const std::string& project) -> const EffectiveConfig& {
    auto it = per_project.find(project);
    if (it == per_project.end()) it = per_project.emplace(project, configs(project)).first;
    return it->second;
  };

  const auto& reg = registry();
  for (const auto& [repo, projects] : corpus.index()) {
    std::vector<const IssueRecord*> repo_issues;
    for (const auto& [project, indices] : projects) {
      for (auto i : indices) repo_issues.push_back(&corpus.issues()[i]);
    }
    const ValueUniverse universe = build_universe(repo_issues);
    DetectContext ctx{corpus.snapshot(), &TypeMapper::builtin(), &universe};
    for (const auto& [project, indices] : projects) {
      if (!options.project.empty() && project != options.project) continue;
      const EffectiveConfig& cfg = config_for(project);
      for (const auto& info : reg) result.cells[info.id][project];
      for (auto i : indices) {
        const IssueRecord& issue = corpus.issues()[i];
        ++result.issues;
        for (const auto& info : reg) {
          Cell& cell = result.cells[info.id][project];
          const EffectiveSetting& setting = cfg.at(info.id);
          if (!setting.enabled) {
            ++cell.disabled;
            continue;
          }
          Evaluation ev = evaluate(info.id, issue, setting.params, ctx);
          if (!ev.applicable) {
            ++cell.not_applicable;
            continue;
          }
          ++cell.applicable;
          if (!ev.violations.empty()) ++cell.violating_issues;
          cell.violations += ev.violations.size();
          for (auto& v : ev.violations) result.violations.push_back(std::move(v));
        }
      }
    }
  }
  result.project_configs = std::move(per_project);
  std::stable_sort(result.violations.begin(), result.violations.end(), [](const Violation& a, const Violation& b) {
    return std::tie(a.issue_key, a.detector_id) < std::tie(b.issue_key, b.detector_id);
  });
  return result;
}

ConfigProvider store_provider(const ConfigStore& store, Context overrides) {
  return [&store, overrides = std::move(overrides)](const std::string& project) {
    return store.effective_for(store.context_for(project, overrides), registry());
  };
}

ConfigProvider default_provider() {
  return [](const std::string&) { return defaults(registry()); };
}

RunResult run_all(const Corpus& corpus, const EffectiveConfig& config, const RunOptions& options) {
  return run_all(corpus, [&config](const std::string&) { return config; }, options);
}

}  // namespace itelint
