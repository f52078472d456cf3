// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "itelint/text.hpp"
#include "itelint/timeutil.hpp"

namespace itelint {
namespace fs = std::filesystem;
using nlohmann::json;

void IngestReport::merge(const IngestReport& o) {
  documents += o.documents;
  parsed += o.parsed;
  skipped_missing_key += o.skipped_missing_key;
  skipped_malformed += o.skipped_malformed;
  skipped_duplicate += o.skipped_duplicate;
  dropped_events += o.dropped_events;
  dropped_comments += o.dropped_comments;
  conflicts += o.conflicts;
  messages.insert(messages.end(), o.messages.begin(), o.messages.end());
}

json to_json(const IngestReport& r) {
  return {{"documents", r.documents},
          {"parsed", r.parsed},
          {"skipped", r.skipped()},
          {"skipped_missing_key", r.skipped_missing_key},
          {"skipped_malformed", r.skipped_malformed},
          {"skipped_duplicate", r.skipped_duplicate},
          {"dropped_events", r.dropped_events},
          {"dropped_comments", r.dropped_comments},
          {"conflicts", r.conflicts},
          {"messages", r.messages}};
}

namespace {

// A scalar JSON value as text; objects contribute their usual label member.
std::optional<std::string> scalar(const json& v) {
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s.empty()) return std::nullopt;
    return s;
  }
  if (v.is_number() || v.is_boolean()) return v.dump();
  if (v.is_object()) {
    for (const char* k : {"name", "value", "key", "displayName"}) {
      if (auto it = v.find(k); it != v.end()) {
        if (auto s = scalar(*it)) return s;
      }
    }
  }
  return std::nullopt;
}

std::optional<Person> person(const json& v) {
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s.empty()) return std::nullopt;
    return Person{s, s};
  }
  if (!v.is_object()) return std::nullopt;
  Person p;
  for (const char* k : {"name", "key", "accountId", "emailAddress"}) {
    if (auto it = v.find(k); it != v.end() && it->is_string() && !it->get<std::string>().empty()) {
      p.id = it->get<std::string>();
      break;
    }
  }
  if (auto it = v.find("displayName"); it != v.end() && it->is_string()) p.display = it->get<std::string>();
  if (p.display.empty()) p.display = p.id;
  if (p.id.empty()) p.id = p.display;
  if (p.id.empty()) return std::nullopt;
  return p;
}

std::vector<std::string> list(const json& v) {
  std::vector<std::string> out;
  if (v.is_array()) {
    for (const auto& item : v) {
      if (auto s = scalar(item)) out.push_back(*s);
    }
  } else if (auto s = scalar(v)) {
    out.push_back(*s);
  }
  return out;
}

std::string custom_value(const json& v) {
  if (v.is_array()) {
    std::string out;
    for (const auto& item : v) {
      auto s = scalar(item);
      if (!s) s = item.dump();
      if (!out.empty()) out += ", ";
      out += *s;
    }
    return out;
  }
  if (auto s = scalar(v)) return *s;
  return v.is_null() ? std::string{} : v.dump();
}

class Sink {
 public:
  Sink(std::string key, IngestReport* report) : key_(std::move(key)), report_(report) {}

  void dropped_event(std::string_view why) {
    if (!report_) return;
    ++report_->dropped_events;
    report_->messages.push_back(fmt::format("{}: dropped changelog entry: {}", key_, why));
  }
  void dropped_comment(std::string_view why) {
    if (!report_) return;
    ++report_->dropped_comments;
    report_->messages.push_back(fmt::format("{}: dropped comment: {}", key_, why));
  }
  void conflict(std::string_view what) {
    if (!report_) return;
    ++report_->conflicts;
    report_->messages.push_back(fmt::format("{}: nested and changelog values disagree for {}; using changelog", key_, what));
  }

 private:
  std::string key_;
  IngestReport* report_;
};

std::optional<Timestamp> timestamp_of(const json& v) {
  if (!v.is_string()) return std::nullopt;
  return parse_timestamp(v.get<std::string>());
}

void read_comments(const json& v, std::vector<Comment>& out, Sink& sink) {
  const json* arr = &v;
  if (v.is_object()) {
    auto it = v.find("comments");
    if (it == v.end()) return;
    arr = &*it;
  }
  if (!arr->is_array()) return;
  for (const auto& c : *arr) {
    if (!c.is_object()) {
      sink.dropped_comment("not an object");
      continue;
    }
    auto created = c.find("created");
    auto when = created == c.end() ? std::nullopt : timestamp_of(*created);
    if (!when) {
      sink.dropped_comment(created == c.end() ? "no timestamp" : fmt::format("bad timestamp {}", created->dump()));
      continue;
    }
    Comment out_c;
    out_c.when = *when;
    if (auto a = c.find("author"); a != c.end()) out_c.author = person(*a);
    if (auto b = c.find("body"); b != c.end() && b->is_string()) out_c.body = b->get<std::string>();
    out.push_back(std::move(out_c));
  }
}

void read_links(const json& v, std::vector<IssueLink>& out) {
  if (!v.is_array()) return;
  for (const auto& l : v) {
    if (!l.is_object()) continue;
    std::string type;
    if (auto t = l.find("type"); t != l.end()) type = scalar(*t).value_or("");
    for (auto [member, dir] : {std::pair{"outwardIssue", LinkDirection::Outward},
                               std::pair{"inwardIssue", LinkDirection::Inward}}) {
      auto it = l.find(member);
      if (it == l.end()) continue;
      auto target = it->is_object() && it->contains("key") ? scalar(it->at("key")) : scalar(*it);
      if (target) out.push_back({type, dir, *target});
    }
  }
}

std::optional<std::string> item_text(const json& item, const char* member) {
  auto it = item.find(member);
  if (it == item.end()) return std::nullopt;
  return scalar(*it);
}

void read_changelog(const json& doc, Timestamp created, const FieldCodebook& book, std::vector<ChangeEvent>& out,
                    Sink& sink) {
  const json* histories = nullptr;
  if (auto cl = doc.find("changelog"); cl != doc.end()) {
    if (cl->is_object()) {
      if (auto h = cl->find("histories"); h != cl->end()) histories = &*h;
    } else if (cl->is_array()) {
      histories = &*cl;
    }
  } else if (auto h = doc.find("histories"); h != doc.end()) {
    histories = &*h;
  }
  if (!histories || !histories->is_array()) return;
  for (const auto& h : *histories) {
    if (!h.is_object()) continue;
    auto items = h.find("items");
    if (items == h.end() || !items->is_array()) continue;
    auto created_it = h.find("created");
    auto when = created_it == h.end() ? std::nullopt : timestamp_of(*created_it);
    if (!when) {
      for (std::size_t i = 0; i < items->size(); ++i) {
        sink.dropped_event(created_it == h.end() ? "no timestamp"
                                                 : fmt::format("bad timestamp {}", created_it->dump()));
      }
      continue;
    }
    std::optional<Person> author;
    if (auto a = h.find("author"); a != h.end()) author = person(*a);
    for (const auto& item : *items) {
      if (!item.is_object() || !item.contains("field")) {
        sink.dropped_event("item without field");
        continue;
      }
      ChangeEvent e;
      e.when = *when;
      e.author = author;
      e.field_raw = scalar(item.at("field")).value_or("");
      e.field = book.unify(e.field_raw);
      e.from_id = item_text(item, "from");
      e.to_id = item_text(item, "to");
      e.from = item_text(item, "fromString");
      e.to = item_text(item, "toString");
      if (!e.from) e.from = e.from_id;
      if (!e.to) e.to = e.to_id;
      e.creational = is_creational(e.when, created);
      out.push_back(std::move(e));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.when < b.when; });
}

std::string project_from_key(std::string_view key) {
  auto dash = key.rfind('-');
  return std::string(dash == std::string_view::npos ? key : key.substr(0, dash));
}

// Text and person fields whose last recorded change disagrees with the
// nested value take the changelog value.
void reconcile(IssueRecord& issue, Sink& sink) {
  std::map<FieldCode, const ChangeEvent*> last;
  for (const auto& e : issue.changelog) {
    if (e.field != FieldCode::Other) last[e.field] = &e;
  }
  for (const auto& [code, e] : last) {
    switch (shape_of(code)) {
      case ValueShape::Text: {
        const std::string* nested = issue.text(code);
        const std::string expected = e->to.value_or("");
        if ((nested ? *nested : std::string{}) != expected) {
          sink.conflict(to_string(code));
          set_field(issue.fields, code, expected);
        }
        break;
      }
      case ValueShape::Person: {
        const Person* nested = issue.person(code);
        std::optional<Person> expected;
        if (e->to || e->to_id) expected = Person{e->to_id.value_or(*e->to), e->to.value_or(*e->to_id)};
        bool same = nested ? (expected && *expected == *nested) : !expected;
        if (!same) {
          sink.conflict(to_string(code));
          if (expected) {
            set_field(issue.fields, code, *expected);
          } else {
            issue.fields.erase(code);
          }
        }
        break;
      }
      default:
        break;
    }
  }
  // Links: targets whose last changelog event disagrees with the nested list.
  std::map<std::string, const ChangeEvent*> last_link;
  for (const auto& e : issue.changelog) {
    if (e.field != FieldCode::IssueLinks) continue;
    if (e.to_id) last_link[*e.to_id] = &e;
    if (e.from_id) last_link[*e.from_id] = &e;
  }
  for (const auto& [target, e] : last_link) {
    const bool added = e->to_id && *e->to_id == target;
    auto it = std::find_if(issue.links.begin(), issue.links.end(),
                           [&](const IssueLink& l) { return l.target == target; });
    const bool present = it != issue.links.end();
    if (added && !present) {
      sink.conflict("IssueLinks " + target);
      issue.links.push_back({e->to.value_or("Link"), LinkDirection::Outward, target});
    } else if (!added && present) {
      sink.conflict("IssueLinks " + target);
      std::erase_if(issue.links, [&](const IssueLink& l) { return l.target == target; });
    }
  }
}

}  // namespace

IssueRecord parse_issue(const json& doc, std::string_view repo, const FieldCodebook& book, IngestReport* report) {
  if (!doc.is_object()) throw MalformedDocument("document is not an object");
  auto key_it = doc.find("key");
  auto key = key_it == doc.end() ? std::nullopt : scalar(*key_it);
  if (!key) throw MissingKey("document has no issue key");
  auto fields_it = doc.find("fields");
  if (fields_it == doc.end() || !fields_it->is_object()) {
    throw MalformedDocument(fmt::format("{}: document has no fields object", *key));
  }
  const json& fields = *fields_it;

  IssueRecord issue;
  issue.key = *key;
  issue.repo = std::string(repo);
  Sink sink(issue.key, report);

  auto created_it = fields.find("created");
  auto created = created_it == fields.end() ? std::nullopt : timestamp_of(*created_it);
  if (!created) {
    throw MalformedTimestamp(fmt::format("{}: unreadable creation date {}", issue.key,
                                         created_it == fields.end() ? "(missing)" : created_it->dump()));
  }
  issue.created = *created;

  std::optional<std::string> project_name;
  for (const auto& [name, value] : fields.items()) {
    if (value.is_null()) continue;
    const FieldCode code = book.unify(name);
    switch (code) {
      case FieldCode::CreatedDate:
        break;
      case FieldCode::ResolvedDate:
        if (auto t = timestamp_of(value)) {
          issue.resolved = *t;
        } else {
          sink.dropped_event(fmt::format("bad resolution date {}", value.dump()));
        }
        break;
      case FieldCode::Comments:
        read_comments(value, issue.comments, sink);
        break;
      case FieldCode::IssueLinks:
        read_links(value, issue.links);
        break;
      case FieldCode::Project:
        if (value.is_object()) {
          if (auto k = value.find("key"); k != value.end()) issue.project = scalar(*k).value_or("");
          if (auto n = value.find("name"); n != value.end()) project_name = scalar(*n);
        } else {
          project_name = scalar(value);
        }
        break;
      case FieldCode::Other:
        if (auto v = custom_value(value); !v.empty()) issue.custom[name] = v;
        break;
      default:
        if (issue.has(code)) break;
        switch (shape_of(code)) {
          case ValueShape::Text:
            if (auto s = scalar(value)) set_field(issue.fields, code, *s);
            break;
          case ValueShape::Person:
            if (auto p = person(value)) set_field(issue.fields, code, *p);
            break;
          case ValueShape::List:
            set_field(issue.fields, code, list(value));
            break;
          case ValueShape::None:
            break;
        }
    }
  }
  if (auto c = doc.find("comments"); c != doc.end() && issue.comments.empty()) read_comments(*c, issue.comments, sink);
  std::stable_sort(issue.comments.begin(), issue.comments.end(),
                   [](const auto& a, const auto& b) { return a.when < b.when; });

  if (issue.project.empty()) issue.project = project_name.value_or(project_from_key(issue.key));
  if (project_name || !issue.project.empty()) set_field(issue.fields, FieldCode::Project, project_name.value_or(issue.project));
  read_changelog(doc, issue.created, book, issue.changelog, sink);
  reconcile(issue, sink);
  if (const std::string* t = issue.text(FieldCode::IssueType)) issue.raw_issue_type = *t;
  return issue;
}

Timestamp latest_instant(const IssueRecord& issue) {
  Timestamp t = issue.created;
  if (issue.resolved) t = std::max(t, *issue.resolved);
  for (const auto& e : issue.changelog) t = std::max(t, e.when);
  for (const auto& c : issue.comments) t = std::max(t, c.when);
  return t;
}

Corpus::Corpus(std::vector<IssueRecord> issues, std::optional<Timestamp> snapshot) : issues_(std::move(issues)) {
  std::sort(issues_.begin(), issues_.end(), [](const auto& a, const auto& b) { return a.key < b.key; });
  for (std::size_t i = 1; i < issues_.size(); ++i) {
    if (issues_[i].key == issues_[i - 1].key) {
      throw std::invalid_argument(fmt::format("duplicate issue key '{}'", issues_[i].key));
    }
  }
  if (snapshot) {
    snapshot_ = *snapshot;
  } else {
    for (const auto& issue : issues_) snapshot_ = std::max(snapshot_, latest_instant(issue));
  }
  for (std::size_t i = 0; i < issues_.size(); ++i) index_[issues_[i].repo][issues_[i].project].push_back(i);
}

const IssueRecord* Corpus::find(std::string_view key) const {
  auto it = std::lower_bound(issues_.begin(), issues_.end(), key,
                             [](const IssueRecord& r, std::string_view k) { return r.key < k; });
  return it != issues_.end() && it->key == key ? &*it : nullptr;
}

std::vector<std::string> Corpus::projects() const {
  std::set<std::string> out;
  for (const auto& issue : issues_) out.insert(issue.project);
  return {out.begin(), out.end()};
}

bool operator==(const Corpus& a, const Corpus& b) { return a.snapshot_ == b.snapshot_ && a.issues_ == b.issues_; }

Corpus truncate(const Corpus& corpus, Timestamp t) {
  std::vector<IssueRecord> out;
  for (const auto& issue : corpus.issues()) {
    if (issue.created <= t) out.push_back(truncate(issue, t));
  }
  return Corpus(std::move(out), t);
}

namespace {

struct Parsed {
  std::string dump;
  IssueRecord issue;
};

void parse_into(const json& doc, std::string_view repo, const FieldCodebook& book, std::vector<Parsed>& out,
                IngestReport& report) {
  ++report.documents;
  try {
    IssueRecord issue = parse_issue(doc, repo, book, &report);
    out.push_back({doc.dump(), std::move(issue)});
  } catch (const MissingKey& e) {
    ++report.skipped_missing_key;
    report.messages.push_back(fmt::format("skipped document {}: {}", report.documents, e.what()));
  } catch (const IngestError& e) {
    ++report.skipped_malformed;
    report.messages.push_back(fmt::format("skipped document {}: {}", report.documents, e.what()));
  }
}

// Keeps one document per key (the smallest serialization), so the result
// does not depend on input order.
DumpResult assemble(std::vector<Parsed> parsed, IngestReport report) {
  std::sort(parsed.begin(), parsed.end(), [](const Parsed& a, const Parsed& b) {
    return a.issue.key != b.issue.key ? a.issue.key < b.issue.key : a.dump < b.dump;
  });
  std::vector<IssueRecord> issues;
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    if (!issues.empty() && parsed[i].issue.key == issues.back().key) {
      ++report.skipped_duplicate;
      report.messages.push_back(fmt::format("skipped duplicate of {}", parsed[i].issue.key));
      continue;
    }
    issues.push_back(std::move(parsed[i].issue));
  }
  report.parsed = issues.size();
  std::sort(report.messages.begin(), report.messages.end());
  return {Corpus(std::move(issues)), std::move(report)};
}

void read_stream(std::istream& in, std::string_view repo, const FieldCodebook& book, std::vector<Parsed>& out,
                 IngestReport& report) {
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string content = ss.str();
  std::string_view body = text::trim(content);
  if (body.empty()) return;
  json whole = json::parse(body, nullptr, false);
  if (!whole.is_discarded()) {
    if (whole.is_array()) {
      for (const auto& doc : whole) parse_into(doc, repo, book, out, report);
      return;
    }
    if (whole.is_object() && whole.contains("issues") && whole["issues"].is_array() && !whole.contains("key")) {
      for (const auto& doc : whole["issues"]) parse_into(doc, repo, book, out, report);
      return;
    }
    parse_into(whole, repo, book, out, report);
    return;
  }
  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    json doc = json::parse(line, nullptr, false);
    if (doc.is_discarded()) {
      ++report.documents;
      ++report.skipped_malformed;
      report.messages.push_back(fmt::format("skipped line {}: not valid JSON", line_no));
      continue;
    }
    parse_into(doc, repo, book, out, report);
  }
}

}  // namespace

DumpResult parse_documents(const std::vector<json>& documents, std::string_view repo, const FieldCodebook& book) {
  IngestReport report;
  std::vector<Parsed> parsed;
  for (const auto& doc : documents) parse_into(doc, repo, book, parsed, report);
  return assemble(std::move(parsed), std::move(report));
}

DumpResult parse_dump(std::istream& in, std::string_view repo, const FieldCodebook& book) {
  IngestReport report;
  std::vector<Parsed> parsed;
  read_stream(in, repo, book, parsed, report);
  return assemble(std::move(parsed), std::move(report));
}

DumpResult parse_dump(const DumpSource& source, const FieldCodebook& book) {
  std::error_code ec;
  if (!fs::exists(source.path, ec)) throw UnreadableSource(fmt::format("{}: no such file", source.path.string()));
  std::vector<fs::path> files;
  std::string repo = source.repo_name;
  if (fs::is_directory(source.path, ec)) {
    for (const auto& entry : fs::directory_iterator(source.path, ec)) {
      auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".json" || ext == ".ndjson" || ext == ".jsonl")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (repo.empty()) repo = fs::absolute(source.path).lexically_normal().filename().string();
    if (repo.empty()) repo = fs::absolute(source.path).lexically_normal().parent_path().filename().string();
  } else {
    files.push_back(source.path);
    if (repo.empty()) repo = source.path.stem().string();
  }
  IngestReport report;
  std::vector<Parsed> parsed;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw UnreadableSource(fmt::format("{}: cannot open", f.string()));
    read_stream(in, repo, book, parsed, report);
  }
  return assemble(std::move(parsed), std::move(report));
}

}  // namespace itelint
