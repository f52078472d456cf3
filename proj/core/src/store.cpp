// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/store.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>

#include "itelint/timeutil.hpp"

namespace itelint {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kFormat = "itelint-store";
constexpr int kVersion = 1;

Timestamp time_from(const json& v) {
  if (!v.is_string()) throw StoreError("timestamp must be a string");
  auto t = parse_timestamp(v.get<std::string>());
  if (!t) throw StoreError(fmt::format("bad timestamp {}", v.dump()));
  return *t;
}

Person person_from(const json& v) {
  return Person{v.at("id").get<std::string>(), v.value("display", std::string{})};
}

std::optional<std::string> opt_string(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

}  // namespace

json to_json(const Person& p) { return {{"id", p.id}, {"display", p.display}}; }

json to_json(const ChangeEvent& e) {
  json out = {{"when", format_timestamp(e.when)}, {"field_raw", e.field_raw}, {"field", to_string(e.field)},
              {"creational", e.creational}};
  if (e.author) out["author"] = to_json(*e.author);
  if (e.from) out["from"] = *e.from;
  if (e.to) out["to"] = *e.to;
  if (e.from_id) out["from_id"] = *e.from_id;
  if (e.to_id) out["to_id"] = *e.to_id;
  if (e.synthetic) out["synthetic"] = true;
  return out;
}

json to_json(const IssueRecord& issue) {
  json fields = json::object();
  for (const auto& [code, value] : issue.fields) {
    std::visit(
        [&, c = code](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, Person>) {
            fields[std::string(to_string(c))] = to_json(v);
          } else {
            fields[std::string(to_string(c))] = v;
          }
        },
        value);
  }
  json comments = json::array();
  for (const auto& c : issue.comments) {
    json j = {{"when", format_timestamp(c.when)}, {"body", c.body}};
    if (c.author) j["author"] = to_json(*c.author);
    comments.push_back(std::move(j));
  }
  json links = json::array();
  for (const auto& l : issue.links) {
    links.push_back({{"type", l.link_type},
                     {"direction", l.direction == LinkDirection::Inward ? "inward" : "outward"},
                     {"target", l.target}});
  }
  json changelog = json::array();
  for (const auto& e : issue.changelog) changelog.push_back(to_json(e));
  json out = {{"key", issue.key},         {"repo", issue.repo},   {"project", issue.project},
              {"raw_issue_type", issue.raw_issue_type},           {"fields", std::move(fields)},
              {"custom", issue.custom},   {"created", format_timestamp(issue.created)},
              {"comments", std::move(comments)}, {"links", std::move(links)}, {"changelog", std::move(changelog)}};
  if (issue.resolved) out["resolved"] = format_timestamp(*issue.resolved);
  return out;
}

IssueRecord issue_from_json(const json& doc) {
  try {
    IssueRecord issue;
    issue.key = doc.at("key").get<std::string>();
    issue.repo = doc.value("repo", std::string{});
    issue.project = doc.value("project", std::string{});
    issue.raw_issue_type = doc.value("raw_issue_type", std::string{});
    issue.created = time_from(doc.at("created"));
    if (auto r = doc.find("resolved"); r != doc.end() && !r->is_null()) issue.resolved = time_from(*r);
    for (const auto& [name, value] : doc.at("fields").items()) {
      auto code = parse_field_code(name);
      if (!code) throw StoreError(fmt::format("unknown field code '{}'", name));
      switch (shape_of(*code)) {
        case ValueShape::Text: set_field(issue.fields, *code, value.get<std::string>()); break;
        case ValueShape::List: set_field(issue.fields, *code, value.get<std::vector<std::string>>()); break;
        case ValueShape::Person: set_field(issue.fields, *code, person_from(value)); break;
        case ValueShape::None: throw StoreError(fmt::format("field '{}' holds no value", name));
      }
    }
    if (auto c = doc.find("custom"); c != doc.end()) issue.custom = c->get<std::map<std::string, std::string>>();
    for (const auto& c : doc.value("comments", json::array())) {
      Comment out;
      out.when = time_from(c.at("when"));
      out.body = c.value("body", std::string{});
      if (auto a = c.find("author"); a != c.end()) out.author = person_from(*a);
      issue.comments.push_back(std::move(out));
    }
    for (const auto& l : doc.value("links", json::array())) {
      issue.links.push_back({l.value("type", std::string{}),
                             l.value("direction", std::string{"outward"}) == "inward" ? LinkDirection::Inward
                                                                                    : LinkDirection::Outward,
                             l.at("target").get<std::string>()});
    }
    for (const auto& e : doc.value("changelog", json::array())) {
      ChangeEvent ev;
      ev.when = time_from(e.at("when"));
      if (auto a = e.find("author"); a != e.end()) ev.author = person_from(*a);
      ev.field_raw = e.value("field_raw", std::string{});
      ev.field = parse_field_code(e.value("field", std::string{"Other"})).value_or(FieldCode::Other);
      ev.from = opt_string(e, "from");
      ev.to = opt_string(e, "to");
      ev.from_id = opt_string(e, "from_id");
      ev.to_id = opt_string(e, "to_id");
      ev.creational = e.value("creational", false);
      ev.synthetic = e.value("synthetic", false);
      issue.changelog.push_back(std::move(ev));
    }
    return issue;
  } catch (const json::exception& e) {
    throw StoreError(e.what());
  }
}

void write_store(std::ostream& out, const Corpus& corpus) {
  json header = {{"format", kFormat}, {"version", kVersion}, {"snapshot", format_timestamp(corpus.snapshot())},
                 {"issues", corpus.size()}};
  out << header.dump() << '\n';
  for (const auto& issue : corpus.issues()) out << to_json(issue).dump() << '\n';
}

void write_store(const fs::path& path, const Corpus& corpus) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreError(fmt::format("cannot write {}", tmp.string()));
    write_store(out, corpus);
    if (!out.flush()) throw StoreError(fmt::format("cannot write {}", tmp.string()));
  }
  fs::rename(tmp, path);
}

Corpus read_store(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw StoreError("empty store");
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object() || header.value("format", std::string{}) != kFormat) {
    throw StoreError("not an itelint store");
  }
  if (header.value("version", 0) != kVersion) {
    throw StoreError(fmt::format("unsupported store version {}", header.value("version", 0)));
  }
  std::optional<Timestamp> snapshot;
  if (auto s = header.find("snapshot"); s != header.end()) snapshot = time_from(*s);
  std::vector<IssueRecord> issues;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded()) throw StoreError(fmt::format("line {}: not valid JSON", line_no));
    issues.push_back(issue_from_json(doc));
  }
  try {
    return Corpus(std::move(issues), snapshot);
  } catch (const std::invalid_argument& e) {
    throw StoreError(e.what());
  }
}

Corpus read_store(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError(fmt::format("{}: cannot open", path.string()));
  return read_store(in);
}

}  // namespace itelint
