// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/catalogue.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "itelint/detectors.hpp"
#include "itelint/embedded_data.hpp"
#include "itelint/text.hpp"
#include "itelint/typemap.hpp"

namespace itelint {
namespace {

using nlohmann::json;

constexpr std::string_view kScopeNames[] = {"Issue", "IssuePair", "Project", "Sprint", "ITS"};

class Reader {
 public:
  explicit Reader(const json& doc) : doc_(doc) {
    if (!doc.is_object()) throw SchemaViolation("?", "document", "catalogue entry must be an object");
    auto id = doc.find("id");
    if (id == doc.end() || !id->is_string() || id->get<std::string>().empty()) {
      throw SchemaViolation("?", "id", "catalogue entry has no id");
    }
    entry_ = id->get<std::string>();
  }

  const std::string& entry() const { return entry_; }

  const json& section(const char* name) const {
    auto it = doc_.find(name);
    if (it == doc_.end()) fail(name, "section is missing");
    if (!it->is_object()) fail(name, "section must be an object");
    return *it;
  }

  std::string text(const json& sec, std::string_view section, const char* dim) const {
    auto it = sec.find(dim);
    const std::string path = fmt::format("{}.{}", section, dim);
    if (it == sec.end()) fail(path, "dimension is missing");
    if (!it->is_string()) fail(path, "dimension must be text");
    std::string v = it->get<std::string>();
    if (text::trim(v).empty()) fail(path, "dimension is empty; use None or Unknown");
    return v;
  }

  Stakeholders stakeholders(const json& sec, const char* dim) const {
    const std::string path = fmt::format("context.{}", dim);
    auto it = sec.find(dim);
    if (it == sec.end()) fail(path, "dimension is missing");
    Stakeholders out;
    if (it->is_string()) {
      out.placeholder = it->get<std::string>();
      if (text::trim(out.placeholder).empty()) fail(path, "dimension is empty; use None or Unknown");
      return out;
    }
    if (!it->is_array() || it->empty()) fail(path, "dimension must be a non-empty list or a placeholder");
    for (const auto& note : *it) {
      if (!note.is_object() || !note.contains("group") || !note.contains("text") || !note["group"].is_string() ||
          !note["text"].is_string()) {
        fail(path, "each note needs group and text");
      }
      out.notes.push_back({note["group"].get<std::string>(), note["text"].get<std::string>()});
    }
    return out;
  }

  [[noreturn]] void fail(const std::string& dimension, std::string_view why) const {
    throw SchemaViolation(entry_, dimension, fmt::format("{}: {}: {}", entry_, dimension, why));
  }

 private:
  const json& doc_;
  std::string entry_;
};

json stakeholders_json(const Stakeholders& s) {
  if (s.notes.empty()) return s.placeholder;
  json out = json::array();
  for (const auto& n : s.notes) out.push_back({{"group", n.group}, {"text", n.text}});
  return out;
}

std::vector<std::string> wrap(std::string_view text, std::size_t width) {
  std::vector<std::string> lines;
  std::string line;
  for (const auto& word : text::split_whitespace(text)) {
    if (!line.empty() && text::char_count(line) + 1 + text::char_count(word) > width) {
      lines.push_back(std::move(line));
      line.clear();
    }
    if (!line.empty()) line += ' ';
    line += word;
  }
  if (!line.empty() || lines.empty()) lines.push_back(std::move(line));
  return lines;
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t n = text::char_count(s);
  return n >= width ? s : s + std::string(width - n, ' ');
}

}  // namespace

std::string_view to_string(ItsScope scope) { return kScopeNames[static_cast<int>(scope)]; }

std::optional<ItsScope> parse_its_scope(std::string_view name) {
  for (int i = 0; i < 5; ++i) {
    if (text::iequals(kScopeNames[i], text::trim(name))) return static_cast<ItsScope>(i);
  }
  return std::nullopt;
}

ValueKind kind_of(std::string_view value) {
  const auto v = text::trim(value);
  if (v == "None") return ValueKind::None;
  if (v == "Unknown") return ValueKind::Unknown;
  return ValueKind::Content;
}

BestPractice parse_practice(const json& doc) {
  Reader r(doc);
  BestPractice bp;
  bp.id = r.entry();
  bp.document = doc;
  if (auto g = doc.find("group"); g != doc.end() && g->is_string()) bp.group = g->get<std::string>();

  const json& meta = r.section("meta");
  bp.name = r.text(meta, "meta", "name");
  auto src = meta.find("source");
  if (src == meta.end()) r.fail("meta.source", "dimension is missing");
  if (src->is_string()) {
    bp.sources.push_back(src->get<std::string>());
  } else if (src->is_array()) {
    for (const auto& s : *src) {
      if (!s.is_string()) r.fail("meta.source", "citations must be text");
      bp.sources.push_back(s.get<std::string>());
    }
  } else {
    r.fail("meta.source", "dimension must be text or a list");
  }
  if (bp.sources.empty()) r.fail("meta.source", "dimension is empty; use None or Unknown");

  const json& summary = r.section("summary");
  bp.objective = r.text(summary, "summary", "objective");
  bp.motivation = r.text(summary, "summary", "motivation");

  const json& rec = r.section("recommendation");
  bp.process = r.text(rec, "recommendation", "process");
  bp.its = r.text(rec, "recommendation", "its");

  const json& ctx = r.section("context");
  bp.benefits = r.stakeholders(ctx, "stakeholder_benefits");
  bp.costs = r.stakeholders(ctx, "stakeholder_costs");
  const std::string scope = r.text(ctx, "context", "its_scope");
  auto parsed = parse_its_scope(scope);
  if (!parsed) r.fail("context.its_scope", fmt::format("'{}' is not a known scope", scope));
  bp.its_scope = *parsed;
  bp.its_scope_text = ctx.value("its_scope_text", scope);
  auto types = ctx.find("issue_types");
  if (types == ctx.end()) r.fail("context.issue_types", "dimension is missing");
  const json* codes = &*types;
  if (types->is_object()) {
    bp.issue_types_text = types->value("text", std::string{});
    auto c = types->find("codes");
    if (c == types->end()) r.fail("context.issue_types", "codes are missing");
    codes = &*c;
  }
  if (codes->is_string()) {
    if (codes->get<std::string>() != "All") r.fail("context.issue_types", "codes must be a list or All");
  } else if (codes->is_array() && !codes->empty()) {
    for (const auto& c : *codes) {
      if (!c.is_string()) r.fail("context.issue_types", "codes must be text");
      bp.issue_types.push_back(c.get<std::string>());
    }
  } else {
    r.fail("context.issue_types", "codes must be a non-empty list or All");
  }
  if (bp.issue_types_text.empty()) bp.issue_types_text = bp.all_types() ? "All" : bp.issue_types.front();
  bp.inclusion_factors = r.text(ctx, "context", "inclusion_factors");
  bp.exclusion_factors = r.text(ctx, "context", "exclusion_factors");

  const json& vio = r.section("violation");
  bp.smells = r.text(vio, "violation", "smells");
  bp.consequences = r.text(vio, "violation", "consequences");
  bp.causes = r.text(vio, "violation", "causes");
  auto ad = vio.find("algorithmic_detection");
  if (ad == vio.end()) r.fail("violation.algorithmic_detection", "dimension is missing");
  if (ad->is_string()) {
    bp.detection = ad->get<std::string>();
  } else if (ad->is_object()) {
    bp.detection = r.text(*ad, "violation.algorithmic_detection", "text");
  } else {
    r.fail("violation.algorithmic_detection", "dimension must be text or an object");
  }
  if (text::trim(bp.detection).empty()) r.fail("violation.algorithmic_detection", "dimension is empty");
  if (ad->is_object()) {
    if (auto d = ad->find("detector_id"); d != ad->end() && !d->is_null()) {
      if (!d->is_string()) r.fail("violation.algorithmic_detection.detector_id", "must be text");
      const std::string id = d->get<std::string>();
      const auto& reg = registry();
      if (std::none_of(reg.begin(), reg.end(), [&](const DetectorInfo& i) { return i.id == id; })) {
        r.fail("violation.algorithmic_detection.detector_id", fmt::format("'{}' is not a registered detector", id));
      }
      bp.detector_id = id;
    }
  }
  return bp;
}

Partition partition_documents(const std::vector<json>& documents) {
  Partition out;
  for (std::size_t i = 0; i < documents.size(); ++i) {
    try {
      out.accepted.push_back(parse_practice(documents[i]));
    } catch (const SchemaViolation& e) {
      out.rejected.push_back({i, e.entry(), e.dimension(), e.what()});
    }
  }
  return out;
}

Catalogue Catalogue::load(const std::vector<json>& practices, const json& smells) {
  Catalogue cat;
  std::set<std::string> ids;
  for (const auto& doc : practices) {
    BestPractice bp = parse_practice(doc);
    if (!ids.insert(bp.id).second) throw SchemaViolation(bp.id, "id", fmt::format("{}: duplicate id", bp.id));
    cat.practices_.push_back(std::move(bp));
  }
  std::sort(cat.practices_.begin(), cat.practices_.end(),
            [](const BestPractice& a, const BestPractice& b) { return a.id < b.id; });
  if (!smells.is_null()) {
    const json& list = smells.is_object() ? smells.at("smells") : smells;
    for (const auto& s : list) {
      Smell smell{s.at("id").get<std::string>(), s.value("group", std::string{}), s.value("smell", std::string{}),
                  s.value("best_practices", std::vector<std::string>{})};
      for (const auto& bp : smell.best_practices) {
        if (!ids.count(bp)) {
          throw SchemaViolation(smell.id, "best_practices", fmt::format("{}: links unknown practice {}", smell.id, bp));
        }
      }
      cat.smells_.push_back(std::move(smell));
    }
  }
  return cat;
}

const Catalogue& Catalogue::builtin() {
  static const Catalogue kBuiltin = [] {
    std::vector<json> docs;
    for (const auto& f : embedded::files()) {
      if (f.path.rfind("catalogue/", 0) == 0) docs.push_back(json::parse(f.content));
    }
    return load(docs, json::parse(*embedded::find("smells.json")));
  }();
  return kBuiltin;
}

const BestPractice* Catalogue::find(std::string_view id) const {
  for (const auto& bp : practices_) {
    if (text::iequals(bp.id, id)) return &bp;
  }
  return nullptr;
}

const Smell* Catalogue::smell(std::string_view id) const {
  for (const auto& s : smells_) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<const BestPractice*> Catalogue::query(const Filter& filter) const {
  std::optional<std::string> code;
  if (filter.issue_type) {
    TypeCode tc = map_issue_type(*filter.issue_type);
    code = tc.code == "Other" ? *filter.issue_type : tc.code;
  }
  const Smell* smell_row = nullptr;
  if (filter.smell_id) {
    smell_row = smell(*filter.smell_id);
    if (!smell_row) return {};
  }
  std::vector<const BestPractice*> out;
  for (const auto& bp : practices_) {
    if (code && !bp.all_types() &&
        std::none_of(bp.issue_types.begin(), bp.issue_types.end(),
                     [&](const std::string& c) { return text::iequals(c, *code); })) {
      continue;
    }
    if (filter.its_scope && bp.its_scope != *filter.its_scope) continue;
    if (filter.has_detector && bp.detector_id.has_value() != *filter.has_detector) continue;
    if (smell_row && std::find(smell_row->best_practices.begin(), smell_row->best_practices.end(), bp.id) ==
                         smell_row->best_practices.end()) {
      continue;
    }
    out.push_back(&bp);
  }
  return out;
}

json summary_json(const BestPractice& bp) {
  return {{"id", bp.id},
          {"name", bp.name},
          {"group", bp.group},
          {"its_scope", to_string(bp.its_scope)},
          {"issue_types", bp.all_types() ? json("All") : json(bp.issue_types)},
          {"detector_id", bp.detector_id ? json(*bp.detector_id) : json(nullptr)}};
}

json to_json(const BestPractice& bp) {
  auto kind = [](ValueKind k) { return k == ValueKind::Content ? "content" : k == ValueKind::None ? "none" : "unknown"; };
  json out = bp.document;
  out["context"]["stakeholder_benefits"] = stakeholders_json(bp.benefits);
  out["context"]["stakeholder_costs"] = stakeholders_json(bp.costs);
  out["value_kinds"] = {{"stakeholder_benefits", kind(bp.benefits.kind())},
                        {"stakeholder_costs", kind(bp.costs.kind())},
                        {"inclusion_factors", kind(kind_of(bp.inclusion_factors))},
                        {"exclusion_factors", kind(kind_of(bp.exclusion_factors))},
                        {"causes", kind(kind_of(bp.causes))}};
  return out;
}

json to_json(const Smell& smell) {
  return {{"id", smell.id}, {"group", smell.group}, {"smell", smell.text}, {"best_practices", smell.best_practices}};
}

std::string render_table(const BestPractice& bp, std::size_t width) {
  constexpr std::size_t kLabel = 24;
  const std::size_t body = width > kLabel + 7 ? width - kLabel - 7 : 40;
  const std::string rule = fmt::format("+{}+{}+\n", std::string(kLabel + 2, '-'), std::string(body + 2, '-'));
  std::string out = rule;
  auto row = [&](const std::string& label, const std::string& value) {
    auto lines = wrap(value, body);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      out += fmt::format("| {} | {} |\n", pad(i == 0 ? label : "", kLabel), pad(lines[i], body));
    }
  };
  auto heading = [&](const std::string& title) {
    out += rule;
    out += fmt::format("| {} |\n", pad(title, kLabel + body + 3));
    out += rule;
  };
  auto notes = [&](const std::string& label, const Stakeholders& s) {
    if (s.notes.empty()) {
      row(label, s.placeholder);
      return;
    }
    bool first = true;
    for (const auto& n : s.notes) {
      row(first ? label : "", fmt::format("{}: {}", n.group, n.text));
      first = false;
    }
  };
  out += fmt::format("| {} |\n", pad(fmt::format("{} {}", bp.id, bp.name), kLabel + body + 3));
  heading("Meta");
  row("Name", bp.name);
  std::string sources;
  for (const auto& s : bp.sources) sources += (sources.empty() ? "" : " ") + s;
  row("Source", sources);
  heading("Summary");
  row("Objective", bp.objective);
  row("Motivation", bp.motivation);
  heading("Recommendation");
  row("Process", bp.process);
  row("ITS", bp.its);
  heading("Context");
  notes("Stakeholder Benefits", bp.benefits);
  notes("Stakeholder Costs", bp.costs);
  row("Artefact Scope", bp.its_scope_text);
  row("Issue Types", bp.issue_types_text);
  row("Inclusion Factors", bp.inclusion_factors);
  row("Exclusion Factors", bp.exclusion_factors);
  heading("Violation");
  row("Smells", bp.smells);
  row("Consequences", bp.consequences);
  row("Causes", bp.causes);
  row("Algorithmic Detection", bp.detection);
  if (bp.detector_id) row("Detector", *bp.detector_id);
  out += rule;
  return out;
}

}  // namespace itelint
