// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "itelint/timeutil.hpp"

namespace itelint::testing {
namespace {

using nlohmann::json;
using Strings = std::vector<std::string>;

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n\f\v");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n\f\v") - b + 1);
}

bool member(const Strings& list, const std::string& v) {
  for (const auto& s : list) {
    if (lower(strip(s)) == lower(strip(v))) return true;
  }
  return false;
}

std::optional<std::string> text(const IssueRecord& issue, FieldCode code) {
  auto it = issue.fields.find(code);
  if (it == issue.fields.end()) return std::nullopt;
  return std::get<std::string>(it->second);
}

std::optional<Person> person(const IssueRecord& issue, FieldCode code) {
  auto it = issue.fields.find(code);
  if (it == issue.fields.end()) return std::nullopt;
  return std::get<Person>(it->second);
}

// The generator's type vocabulary: only these names are bug reports.
bool is_bug_report(const IssueRecord& issue) {
  const std::string raw = lower(text(issue, FieldCode::IssueType).value_or(issue.raw_issue_type));
  return raw == "bug" || raw == "defect" || raw == "incident" || raw == "issue" || raw == "bug report";
}

bool type_ok(const IssueRecord& issue, const Params& params) {
  for (const auto& w : params.get_list("issue_types")) {
    const std::string l = lower(w);
    if (l == "all") return true;
    if ((l == "bugreport" || l == "maintenance") && is_bug_report(issue)) return true;
    if (l == "task" && lower(text(issue, FieldCode::IssueType).value_or(issue.raw_issue_type)) == "task") return true;
  }
  return false;
}

bool closed(const IssueRecord& issue, const Params& params) {
  auto s = text(issue, FieldCode::Status);
  return s && member(params.get_list("closed_statuses"), *s);
}

std::vector<ChangeEvent> post(const IssueRecord& issue, FieldCode code) {
  std::vector<ChangeEvent> out;
  for (const auto& e : issue.changelog) {
    if (!e.creational && e.field == code) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.when < b.when; });
  return out;
}

// Indices of events that open a new burst: the first event and every event
// at least `window` after its predecessor.
std::vector<std::size_t> burst_starts(const std::vector<ChangeEvent>& events, Duration window) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i == 0 || !(events[i].when - events[i - 1].when < window)) out.push_back(i);
  }
  return out;
}

std::string id_or_display(const std::optional<std::string>& display, const std::optional<std::string>& id) {
  if (id) return *id;
  return display.value_or("");
}

// Value at creation: a recorded creation event, else the `from` of the first
// later change, else the final value.
std::optional<std::string> creation_value(const IssueRecord& issue, FieldCode code) {
  std::optional<std::string> recorded;
  bool has_recorded = false;
  for (const auto& e : issue.changelog) {
    if (e.creational && e.field == code) {
      has_recorded = true;
      recorded = code == FieldCode::Assignee ? std::optional(id_or_display(e.to, e.to_id)) : e.to;
    }
  }
  if (has_recorded) return recorded;
  auto later = post(issue, code);
  if (!later.empty()) {
    if (code == FieldCode::Assignee) {
      if (!later.front().from && !later.front().from_id) return std::nullopt;
      return id_or_display(later.front().from, later.front().from_id);
    }
    return later.front().from;
  }
  if (code == FieldCode::Assignee) {
    auto p = person(issue, code);
    return p ? std::optional(p->id) : std::nullopt;
  }
  return text(issue, code);
}

// Assignee id at `t`, undoing every later change from the final value.
std::optional<std::string> assignee_at(const IssueRecord& issue, Timestamp t) {
  auto p = person(issue, FieldCode::Assignee);
  std::optional<std::string> v = p ? std::optional(p->id) : std::nullopt;
  auto events = post(issue, FieldCode::Assignee);
  for (auto it = events.rbegin(); it != events.rend(); ++it) {
    if (it->when <= t) break;
    if (it->from || it->from_id) {
      v = id_or_display(it->from, it->from_id);
    } else {
      v.reset();
    }
  }
  return v;
}

bool word_byte(unsigned char c) { return c >= 0x80 || std::isalnum(c) || c == '_'; }

bool mentions(const std::string& body, const std::string& needle_raw) {
  const std::string needle = lower(strip(needle_raw));
  const std::string hay = lower(body);
  if (needle.empty()) return false;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) {
    const bool left = pos == 0 || !word_byte(hay[pos - 1]) || !word_byte(needle.front());
    const std::size_t end = pos + needle.size();
    const bool right = end == hay.size() || !word_byte(hay[end]) || !word_byte(needle.back());
    if (left && right) return true;
  }
  return false;
}

const std::map<FieldCode, Strings>& tokens() {
  static const std::map<FieldCode, Strings> t = {
      {FieldCode::IssueType, {"IssueType", "issuetype", "issuetype.name", "Issue Type", "type", "issueType"}},
      {FieldCode::Status, {"Status", "status", "status.name", "Current Status"}},
      {FieldCode::Priority, {"Priority", "priority", "priority-name"}},
      {FieldCode::Resolution, {"Resolution", "resolution", "resolution.name"}},
  };
  return t;
}

std::size_t words(const std::string& s) {
  std::istringstream in(s);
  std::size_t n = 0;
  for (std::string w; in >> w;) ++n;
  return n;
}

std::size_t scalars(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if (c < 0x80 || c >= 0xC0) ++n;
  }
  return n;
}

Outcome missing(std::string_view id, const IssueRecord& issue, const Params& params) {
  Outcome o;
  auto res = text(issue, FieldCode::Resolution);
  if (!type_ok(issue, params) || !closed(issue, params) || !res ||
      !member(params.get_list("fixed_resolutions"), *res)) {
    return o;
  }
  o.applicable = true;
  const Strings& invalid = params.get_list("invalid_values");
  json value = nullptr;
  bool gap = false;
  if (id == "missing_assignee") {
    auto p = person(issue, FieldCode::Assignee);
    gap = !p || member(invalid, p->id) || member(invalid, p->display);
    if (p) value = p->id;
  } else if (id == "missing_components") {
    auto it = issue.fields.find(FieldCode::Components);
    if (it == issue.fields.end()) {
      gap = true;
    } else {
      const auto& l = std::get<Strings>(it->second);
      gap = std::all_of(l.begin(), l.end(), [&](const auto& c) { return member(invalid, c); });
      value = l;
    }
  } else {
    std::optional<std::string> v;
    if (id == "missing_priority") v = text(issue, FieldCode::Priority);
    if (id == "missing_environment") v = text(issue, FieldCode::Environment);
    if (id == "missing_severity") {
      const std::string name = lower(strip(params.get_string("custom_field")));
      for (const auto& [k, val] : issue.custom) {
        if (lower(strip(k)) == name) v = val;
      }
      if (auto it = issue.custom.find(params.get_string("custom_field")); it != issue.custom.end()) v = it->second;
    }
    gap = !v || strip(*v).empty() || member(invalid, *v);
    if (v) value = *v;
  }
  if (gap) o.findings.push_back(value.dump());
  return o;
}

}  // namespace

NaiveUniverse naive_universe(const std::vector<const IssueRecord*>& issues) {
  NaiveUniverse u;
  for (const auto& [code, _] : tokens()) u[code];
  auto add = [&](FieldCode code, const std::optional<std::string>& v) {
    if (v && !strip(*v).empty()) u[code].insert(strip(*v));
  };
  for (const IssueRecord* issue : issues) {
    for (const auto& [code, _] : tokens()) {
      add(code, text(*issue, code));
      add(code, creation_value(*issue, code));
    }
    for (const auto& e : issue->changelog) {
      if (!tokens().count(e.field)) continue;
      add(e.field, e.from);
      add(e.field, e.to);
    }
  }
  return u;
}

Outcome oracle(std::string_view id, const IssueRecord& issue, const Params& params, Timestamp now,
               const NaiveUniverse& universe) {
  if (id.rfind("missing_", 0) == 0) return missing(id, issue, params);
  Outcome o;
  if (!type_ok(issue, params)) return o;

  if (id == "reassignments") {
    o.applicable = true;
    auto events = post(issue, FieldCode::Assignee);
    const auto count = burst_starts(events, params.get_duration("collapse")).size();
    if (static_cast<long long>(count) > params.get_int("threshold")) o.findings.push_back(std::to_string(count));
    return o;
  }

  if (id == "team_assignment") {
    auto p = person(issue, FieldCode::Assignee);
    if (!p) return o;
    o.applicable = true;
    for (const auto& kw : params.get_list("keywords")) {
      if (!kw.empty() && lower(p->display).find(lower(kw)) != std::string::npos) {
        o.findings.push_back(kw);
        break;
      }
    }
    return o;
  }

  if (id == "nonassignee_resolution") {
    if (!issue.resolved) return o;
    std::optional<ChangeEvent> resolving;
    for (auto it = issue.changelog.rbegin(); it != issue.changelog.rend() && !resolving; ++it) {
      if (it->field == FieldCode::Resolution && it->to) resolving = *it;
    }
    for (auto it = issue.changelog.rbegin(); it != issue.changelog.rend() && !resolving; ++it) {
      if (it->field == FieldCode::Status && it->to && member(params.get_list("closed_statuses"), *it->to)) {
        resolving = *it;
      }
    }
    if (!resolving || !resolving->author) return o;
    auto assignee = assignee_at(issue, std::max(resolving->when, issue.created));
    if (!assignee) return o;
    o.applicable = true;
    if (*assignee != resolving->author->id) o.findings.push_back(resolving->author->id + "|" + *assignee);
    return o;
  }

  if (id == "slow_severe_resolution") {
    auto p = text(issue, FieldCode::Priority);
    if (!p || !member(params.get_list("severe_priorities"), *p)) return o;
    if (!issue.resolved && !params.get_bool("include_open")) return o;
    o.applicable = true;
    const Timestamp end = issue.resolved ? *issue.resolved : now;
    if ((end - issue.created).count() > params.get_duration("window").count()) {
      o.findings.push_back(format_timestamp(end));
    }
    return o;
  }

  if (id == "activity_gap") {
    o.applicable = true;
    const Timestamp end = issue.resolved ? *issue.resolved : std::max(now, issue.created);
    std::vector<Timestamp> pts{issue.created, end};
    for (const auto& e : issue.changelog) {
      if (e.when <= end) pts.push_back(e.when);
    }
    for (const auto& c : issue.comments) {
      if (c.when <= end) pts.push_back(c.when);
    }
    // For every point, the distance to the nearest strictly later point.
    Duration best{0};
    Timestamp from{}, to{};
    for (Timestamp p : pts) {
      std::optional<Timestamp> next;
      for (Timestamp q : pts) {
        if (q > p && (!next || q < *next)) next = q;
      }
      if (!next) continue;
      const Duration g = *next - p;
      if (g > best || (g == best && p < from)) {
        best = g;
        from = p;
        to = *next;
      }
    }
    if (best > params.get_duration("max_gap")) o.findings.push_back(format_timestamp(from) + ".." + format_timestamp(to));
    return o;
  }

  if (id == "reopen") {
    o.applicable = true;
    auto events = post(issue, FieldCode::Status);
    auto starts = burst_starts(events, params.get_duration("collapse"));
    for (std::size_t k = 0; k < starts.size(); ++k) {
      const std::size_t first = starts[k];
      const std::size_t last = k + 1 < starts.size() ? starts[k + 1] - 1 : events.size() - 1;
      const std::string from = events[first].from.value_or("");
      const std::string to = events[last].to.value_or("");
      if (lower(from) == lower(to)) continue;
      const bool left = !from.empty() && member(params.get_list("closed_statuses"), from) &&
                        !member(params.get_list("closed_statuses"), to);
      const bool reopened = !to.empty() && member(params.get_list("reopened_values"), to);
      if (left || reopened) o.findings.push_back(from + "->" + to + "@" + format_timestamp(events[last].when));
    }
    return o;
  }

  if (id == "no_comments") {
    if (!closed(issue, params)) return o;
    o.applicable = true;
    if (issue.comments.empty()) o.findings.push_back("none");
    return o;
  }

  if (id == "sufficient_description" || id == "succinct_description") {
    o.applicable = true;
    const auto n = static_cast<long long>(words(text(issue, FieldCode::Description).value_or("")));
    if (id == "sufficient_description" ? n < params.get_int("min_words") : n > params.get_int("max_words")) {
      o.findings.push_back(std::to_string(n));
    }
    return o;
  }

  if (id == "summary_length") {
    o.applicable = true;
    const auto n = static_cast<long long>(scalars(strip(text(issue, FieldCode::Summary).value_or(""))));
    if (n < params.get_int("min_chars") || n > params.get_int("max_chars")) o.findings.push_back(std::to_string(n));
    return o;
  }

  if (id == "status_ping_pong" || id == "assignee_ping_pong") {
    o.applicable = true;
    const FieldCode code = id == "status_ping_pong" ? FieldCode::Status : FieldCode::Assignee;
    std::vector<std::pair<std::string, Timestamp>> seq;
    auto push = [&](const std::optional<std::string>& v, Timestamp when) {
      if (!v || v->empty()) return;
      if (!seq.empty() && seq.back().first == *v) return;
      seq.emplace_back(*v, when);
    };
    push(creation_value(issue, code), issue.created);
    for (const auto& e : post(issue, code)) {
      if (code == FieldCode::Assignee) {
        push(e.to || e.to_id ? std::optional(id_or_display(e.to, e.to_id)) : std::nullopt, e.when);
      } else {
        push(e.to, e.when);
      }
    }
    const Strings& allowed = params.get_list("allowed_cycles");
    for (std::size_t i = 1; i < seq.size(); ++i) {
      bool revisit = false;
      for (std::size_t j = 0; j < i; ++j) revisit = revisit || seq[j].first == seq[i].first;
      if (!revisit) continue;
      const std::string a = lower(seq[i - 1].first);
      const std::string b = lower(seq[i].first);
      bool ok = false;
      for (const auto& pair : allowed) {
        const auto bar = pair.find('|');
        if (bar == std::string::npos) continue;
        const std::string x = lower(strip(pair.substr(0, bar)));
        const std::string y = lower(strip(pair.substr(bar + 1)));
        ok = ok || (x == a && y == b) || (x == b && y == a);
      }
      if (!ok) o.findings.push_back(seq[i - 1].first + "->" + seq[i].first + "@" + format_timestamp(seq[i].second));
    }
    return o;
  }

  if (id == "inconsistent_properties") {
    o.applicable = true;
    std::vector<FieldCode> wanted;
    for (const auto& name : params.get_list("fields")) {
      for (const auto& [code, toks] : tokens()) {
        if (member(toks, name) && std::find(wanted.begin(), wanted.end(), code) == wanted.end()) {
          wanted.push_back(code);
        }
      }
    }
    auto scan = [&](const std::string& body, const std::string& where) {
      std::string found;
      for (FieldCode code : wanted) {
        const Strings& toks = tokens().at(code);
        if (std::none_of(toks.begin(), toks.end(), [&](const auto& t) { return mentions(body, t); })) continue;
        for (const auto& v : universe.at(code)) {
          if (mentions(body, v)) {
            found += std::string(to_string(code)) + "=" + v + ";";
            break;
          }
        }
      }
      if (!found.empty()) o.findings.push_back(where + ":" + found);
    };
    if (auto d = text(issue, FieldCode::Description)) scan(*d, "description");
    for (std::size_t i = 0; i < issue.comments.size(); ++i) scan(issue.comments[i].body, "comment#" + std::to_string(i));
    return o;
  }
  throw std::invalid_argument("no oracle for " + std::string(id));
}

Outcome canonical(std::string_view id, const Evaluation& ev) {
  Outcome o;
  o.applicable = ev.applicable;
  for (const auto& v : ev.violations) {
    const json& e = v.evidence;
    std::string s;
    if (id.rfind("missing_", 0) == 0) {
      s = e.at("value").dump();
    } else if (id == "reassignments") {
      s = std::to_string(e.at("count").get<std::size_t>());
    } else if (id == "team_assignment") {
      s = e.at("keyword").get<std::string>();
    } else if (id == "nonassignee_resolution") {
      s = e.at("resolver").get<std::string>() + "|" + e.at("assignee").get<std::string>();
    } else if (id == "slow_severe_resolution") {
      s = e.at("end").get<std::string>();
    } else if (id == "activity_gap") {
      s = e.at("from").get<std::string>() + ".." + e.at("to").get<std::string>();
    } else if (id == "reopen") {
      s = e.at("from").get<std::string>() + "->" + e.at("to").get<std::string>() + "@" + e.at("when").get<std::string>();
    } else if (id == "no_comments") {
      s = "none";
    } else if (id == "sufficient_description" || id == "succinct_description") {
      s = std::to_string(e.at("words").get<std::size_t>());
    } else if (id == "summary_length") {
      s = std::to_string(e.at("chars").get<long long>());
    } else if (id == "status_ping_pong" || id == "assignee_ping_pong") {
      s = e.at("previous").get<std::string>() + "->" + e.at("value").get<std::string>() + "@" +
          e.at("when").get<std::string>();
    } else if (id == "inconsistent_properties") {
      s = e.at("source").get<std::string>();
      if (e.contains("index")) s += "#" + std::to_string(e.at("index").get<std::size_t>());
      s += ":";
      for (const auto& m : e.at("matches")) {
        s += m.at("field").get<std::string>() + "=" + m.at("value").get<std::string>() + ";";
      }
    }
    o.findings.push_back(std::move(s));
  }
  return o;
}

std::string describe(const Outcome& o) {
  std::string s = o.applicable ? "applicable [" : "not applicable [";
  for (std::size_t i = 0; i < o.findings.size(); ++i) s += (i ? ", " : "") + o.findings[i];
  return s + "]";
}

}  // namespace itelint::testing
