// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/evolution.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "itelint/embedded_data.hpp"
#include "itelint/text.hpp"
#include "itelint/timeutil.hpp"

namespace itelint {

bool is_creational(Timestamp when, Timestamp created) {
  auto delta = when - created;
  return delta <= kCreationalTolerance && delta >= -kCreationalTolerance;
}

const FieldCodebook& FieldCodebook::builtin() {
  static const FieldCodebook kBook = [] {
    auto content = embedded::find("codebook.json");
    if (!content) throw std::logic_error("shipped codebook.json missing");
    return from_json(nlohmann::json::parse(*content));
  }();
  return kBook;
}

FieldCodebook FieldCodebook::from_json(const nlohmann::json& doc) {
  FieldCodebook book;
  for (const auto& group : doc.at("themes")) {
    const auto theme_name = group.at("theme").get<std::string>();
    auto theme = parse_theme(theme_name);
    if (!theme) throw std::invalid_argument(fmt::format("unknown theme '{}'", theme_name));
    for (const auto& entry : group.at("codes")) {
      const auto code_name = entry.at("code").get<std::string>();
      auto code = parse_field_code(code_name);
      if (!code || code == FieldCode::Other) {
        throw std::invalid_argument(fmt::format("unknown field code '{}'", code_name));
      }
      if (theme_of(*code) != theme) {
        throw std::invalid_argument(fmt::format("code '{}' does not belong to theme '{}'", code_name, theme_name));
      }
      for (const auto& name : entry.at("names")) book.add_synonym(name.get<std::string>(), *code);
    }
  }
  return book;
}

void FieldCodebook::add_synonym(std::string_view raw, FieldCode code) {
  exact_.insert_or_assign(std::string(raw), code);
  folded_.emplace(text::fold_name(raw), code);
}

FieldCode FieldCodebook::unify(std::string_view raw) const {
  if (auto it = exact_.find(std::string(raw)); it != exact_.end()) return it->second;
  if (auto it = folded_.find(text::fold_name(raw)); it != folded_.end()) return it->second;
  return FieldCode::Other;
}

FieldCode unify_field_name(std::string_view raw) { return FieldCodebook::builtin().unify(raw); }

namespace {

constexpr char kListJoin = '\n';

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    if (end > start) out.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::vector<std::string> current_list(const FieldState& state, FieldCode code) {
  const auto* l = list_of(state.fields, code);
  return l ? *l : std::vector<std::string>{};
}

std::optional<Person> person_value(const std::optional<std::string>& display, const std::optional<std::string>& id) {
  if (!display && !id) return std::nullopt;
  return Person{id ? *id : *display, display ? *display : *id};
}

void set_person(FieldState& state, FieldCode code, const std::optional<Person>& p) {
  if (p) {
    set_field(state.fields, code, *p);
  } else {
    state.fields.erase(code);
  }
}

void set_text(FieldState& state, FieldCode code, const std::optional<std::string>& v) {
  set_field(state.fields, code, v.value_or(std::string{}));
}

// Moves one list field from `remove` to `add`.
void edit_list(FieldState& state, FieldCode code, const std::optional<std::string>& remove,
               const std::optional<std::string>& add) {
  auto list = current_list(state, code);
  if (remove) std::erase(list, *remove);
  if (add) list.push_back(*add);
  set_field(state.fields, code, std::move(list));
}

void set_custom(FieldState& state, const std::string& name, const std::optional<std::string>& v) {
  if (v && !v->empty()) {
    state.custom[name] = *v;
  } else {
    state.custom.erase(name);
  }
}

void undo_event(FieldState& state, const ChangeEvent& e) {
  if (e.field == FieldCode::Other) {
    set_custom(state, e.field_raw, e.from);
    return;
  }
  switch (shape_of(e.field)) {
    case ValueShape::Text:
      set_text(state, e.field, e.from);
      break;
    case ValueShape::Person:
      set_person(state, e.field, person_value(e.from, e.from_id));
      break;
    case ValueShape::List:
      if (e.field == FieldCode::Labels) {
        set_field(state.fields, e.field, text::split_whitespace(e.from.value_or("")));
      } else {
        edit_list(state, e.field, e.to, e.from);
      }
      break;
    case ValueShape::None:
      break;
  }
}

// Identifies the field an event writes to, canonical or custom.
std::string field_key(const ChangeEvent& e) {
  return e.field == FieldCode::Other ? "custom:" + e.field_raw : std::string(to_string(e.field));
}

}  // namespace

void apply_event(FieldState& state, const ChangeEvent& e) {
  if (e.field == FieldCode::Other) {
    set_custom(state, e.field_raw, e.to);
    return;
  }
  switch (shape_of(e.field)) {
    case ValueShape::Text:
      set_text(state, e.field, e.to);
      break;
    case ValueShape::Person:
      set_person(state, e.field, person_value(e.to, e.to_id));
      break;
    case ValueShape::List:
      if (e.field == FieldCode::Labels) {
        set_field(state.fields, e.field, text::split_whitespace(e.to.value_or("")));
      } else if (e.synthetic) {
        set_field(state.fields, e.field, split_on(e.to.value_or(""), kListJoin));
      } else {
        edit_list(state, e.field, e.from, e.to);
      }
      break;
    case ValueShape::None:
      break;
  }
}

FieldState creation_snapshot(const IssueRecord& issue) {
  FieldState state{issue.fields, issue.custom};
  std::set<std::string> replayed;
  for (const auto& e : issue.changelog) {
    if (e.creational) replayed.insert(field_key(e));
  }
  for (auto it = issue.changelog.rbegin(); it != issue.changelog.rend(); ++it) {
    if (!it->creational && !replayed.count(field_key(*it))) undo_event(state, *it);
  }
  for (const auto& key : replayed) {
    if (key.rfind("custom:", 0) == 0) {
      state.custom.erase(key.substr(7));
    } else {
      state.fields.erase(*parse_field_code(key));
    }
  }
  for (const auto& e : issue.changelog) {
    if (e.creational) apply_event(state, e);
  }
  return state;
}

Timeline timeline(const IssueRecord& issue) {
  Timeline out;
  std::set<FieldCode> recorded;
  for (const auto& e : issue.changelog) {
    if (e.creational) recorded.insert(e.field);
  }
  FieldState snapshot = creation_snapshot(issue);
  std::optional<Person> creator;
  if (const Person* p = person_of(snapshot.fields, FieldCode::Creator)) creator = *p;
  for (const auto& [code, value] : snapshot.fields) {
    if (recorded.count(code) || shape_of(code) == ValueShape::None) continue;
    ChangeEvent e;
    e.when = issue.created;
    e.author = creator;
    e.field_raw = std::string(to_string(code));
    e.field = code;
    e.creational = true;
    e.synthetic = true;
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, std::string>) {
            e.to = v;
          } else if constexpr (std::is_same_v<V, Person>) {
            e.to = v.display;
            e.to_id = v.id;
          } else {
            std::string joined;
            const char sep = code == FieldCode::Labels ? ' ' : kListJoin;
            for (const auto& item : v) {
              if (!joined.empty()) joined.push_back(sep);
              joined += item;
            }
            e.to = joined;
          }
        },
        value);
    out.creational.push_back(std::move(e));
  }
  for (const auto& e : issue.changelog) {
    (e.creational ? out.creational : out.post_creational).push_back(e);
  }
  auto by_time = [](const ChangeEvent& a, const ChangeEvent& b) { return a.when < b.when; };
  std::stable_sort(out.creational.begin(), out.creational.end(), by_time);
  std::stable_sort(out.post_creational.begin(), out.post_creational.end(), by_time);
  return out;
}

IssueState state_at(const IssueRecord& issue, Timestamp t) {
  if (t < issue.created) {
    throw BeforeCreation(fmt::format("{}: {} precedes creation at {}", issue.key, format_timestamp(t),
                                     format_timestamp(issue.created)));
  }
  IssueState out;
  out.values = creation_snapshot(issue);
  const bool resolution_at_creation = text_of(out.values.fields, FieldCode::Resolution) != nullptr;
  for (const auto& e : issue.changelog) {
    if (!e.creational && e.when <= t) apply_event(out.values, e);
  }
  for (const auto& c : issue.comments) {
    if (c.when <= t) out.comments.push_back(c);
  }
  // With a resolution history, the resolved instant at t is the start of
  // the resolution period open at t.
  bool has_history = false;
  bool set = resolution_at_creation;
  std::optional<Timestamp> start;
  if (set) start = issue.created;
  bool cleared_since_final = false;
  for (const auto& e : issue.changelog) {
    if (e.creational || e.field != FieldCode::Resolution) continue;
    has_history = true;
    if (e.when > t) continue;
    if (e.to) {
      if (!set) start = e.when;
      set = true;
    } else {
      set = false;
      start.reset();
      if (issue.resolved && e.when > *issue.resolved) cleared_since_final = true;
    }
  }
  if (!has_history) {
    if (issue.resolved && *issue.resolved <= t) out.resolved = issue.resolved;
  } else if (set) {
    const bool final_period = issue.resolved && *issue.resolved <= t && !cleared_since_final;
    out.resolved = final_period ? issue.resolved : start;
  }
  return out;
}

IssueRecord truncate(const IssueRecord& issue, Timestamp t) {
  IssueState s = state_at(issue, t);
  IssueRecord out;
  out.key = issue.key;
  out.repo = issue.repo;
  out.project = issue.project;
  out.fields = std::move(s.values.fields);
  out.custom = std::move(s.values.custom);
  const std::string* type = text_of(out.fields, FieldCode::IssueType);
  out.raw_issue_type = type ? *type : issue.raw_issue_type;
  out.created = issue.created;
  out.resolved = s.resolved;
  out.comments = std::move(s.comments);
  out.links = issue.links;
  for (const auto& e : issue.changelog) {
    if (e.creational || e.when <= t) out.changelog.push_back(e);
  }
  return out;
}

std::string_view to_string(OwnershipClass c) {
  switch (c) {
    case OwnershipClass::CRA: return "CRA";
    case OwnershipClass::CRa: return "CRa";
    case OwnershipClass::crA: return "crA";
    case OwnershipClass::cRa: return "cRa";
    case OwnershipClass::Cra: return "Cra";
    case OwnershipClass::cRA: return "cRA";
    case OwnershipClass::CrA: return "CrA";
    case OwnershipClass::NonOwner: return "Non-Owner";
  }
  return "Non-Owner";
}

OwnershipClass OwnershipRole::cls() const {
  if (unknown_author) return OwnershipClass::NonOwner;
  const int bits = (creator ? 4 : 0) | (reporter ? 2 : 0) | (assignee ? 1 : 0);
  constexpr OwnershipClass kByBits[] = {OwnershipClass::NonOwner, OwnershipClass::crA, OwnershipClass::cRa,
                                        OwnershipClass::cRA,      OwnershipClass::Cra, OwnershipClass::CrA,
                                        OwnershipClass::CRa,      OwnershipClass::CRA};
  return kByBits[bits];
}

namespace {

OwnershipRole roles_against(const ChangeEvent& e, const std::optional<Person>& creator, const FieldState& before) {
  OwnershipRole r;
  if (!e.author) {
    r.unknown_author = true;
    return r;
  }
  const Person* reporter = person_of(before.fields, FieldCode::Reporter);
  const Person* assignee = person_of(before.fields, FieldCode::Assignee);
  r.creator = creator && *creator == *e.author;
  r.reporter = reporter && *reporter == *e.author;
  r.assignee = assignee && *assignee == *e.author;
  return r;
}

std::optional<Person> fixed_creator(const IssueRecord& issue, const FieldState& snapshot) {
  if (const Person* p = issue.person(FieldCode::Creator)) return *p;
  if (const Person* p = person_of(snapshot.fields, FieldCode::Creator)) return *p;
  return std::nullopt;
}

}  // namespace

OwnershipRole classify_ownership(const ChangeEvent& event, const IssueRecord& issue) {
  FieldState state = creation_snapshot(issue);
  const auto creator = fixed_creator(issue, state);
  if (event.creational) return roles_against(event, creator, state);
  const ChangeEvent* begin = issue.changelog.data();
  const ChangeEvent* end = begin + issue.changelog.size();
  const bool inside = &event >= begin && &event < end;
  for (const auto& e : issue.changelog) {
    if (inside ? &e == &event : e.when >= event.when) break;
    if (!e.creational) apply_event(state, e);
  }
  return roles_against(event, creator, state);
}

std::vector<OwnershipRole> classify_all(const IssueRecord& issue) {
  FieldState state = creation_snapshot(issue);
  const auto creator = fixed_creator(issue, state);
  std::vector<OwnershipRole> out;
  for (const auto& e : issue.changelog) {
    if (e.creational) continue;
    out.push_back(roles_against(e, creator, state));
    apply_event(state, e);
  }
  return out;
}

}  // namespace itelint
