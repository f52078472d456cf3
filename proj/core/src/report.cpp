// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/report.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "itelint/evolution.hpp"
#include "itelint/text.hpp"
#include "itelint/timeutil.hpp"

namespace itelint {
namespace {

using nlohmann::json;

const char* const kSynonymParams[] = {"closed_statuses", "fixed_resolutions"};

json opt_json(std::optional<double> v) { return v ? json(*v) : json(nullptr); }

json rate_json(const Rate& r) {
  return {{"violating", r.violating}, {"applicable", r.applicable}, {"rate", opt_json(r.value())}};
}

std::string fmt_rate(const Rate& r) {
  auto v = r.value();
  return v ? fmt::format("{:.1f}%", *v * 100.0) : std::string("n/a");
}

const EffectiveConfig& config_of(const RunResult& run, std::string_view project) {
  if (!project.empty()) {
    if (auto it = run.project_configs.find(std::string(project)); it != run.project_configs.end()) return it->second;
  }
  return run.config;
}

json synonyms_of(const EffectiveSetting& s) {
  json out = json::object();
  for (const char* name : kSynonymParams) {
    if (s.params.values().count(name)) out[name] = s.params.get_list(name);
  }
  return out;
}

// Column-aligned text table.
std::string render(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = text::char_count(header[c]);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], text::char_count(row[c]));
    }
  }
  auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out += cells[c];
      if (c + 1 < cells.size()) out += std::string(width[c] - text::char_count(cells[c]) + 2, ' ');
    }
    return out + '\n';
  };
  std::string out = line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.emplace_back(w, '-');
  out += line(rule);
  for (const auto& row : rows) out += line(row);
  return out;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  return out + '\n';
}

std::string num(double v) { return fmt::format("{}", v); }

std::string opt_num(std::optional<double> v) { return v ? num(*v) : std::string{}; }

}  // namespace

std::optional<double> Rate::value() const {
  if (applicable == 0) return std::nullopt;
  return static_cast<double>(violating) / static_cast<double>(applicable);
}

std::vector<DetectorRates> project_rates(const RunResult& run) {
  std::vector<DetectorRates> out;
  for (const auto& info : registry()) {
    DetectorRates d;
    d.detector_id = info.id;
    std::vector<double> sample;
    if (auto it = run.cells.find(info.id); it != run.cells.end()) {
      for (const auto& [project, cell] : it->second) {
        Rate r{cell.violating_issues, cell.applicable};
        d.projects.emplace(project, r);
        d.overall.violating += r.violating;
        d.overall.applicable += r.applicable;
        if (auto v = r.value()) sample.push_back(*v);
      }
    }
    if (!sample.empty()) d.across_projects = box_stats(sample);
    out.push_back(std::move(d));
  }
  return out;
}

std::optional<double> weighted_score(const std::vector<Contribution>& contributions) {
  double weighted = 0;
  double total = 0;
  for (const auto& c : contributions) {
    auto v = c.rate.value();
    if (!c.enabled || !v || c.weight <= 0) continue;
    weighted += c.weight * *v;
    total += c.weight;
  }
  if (total == 0) return std::nullopt;
  return 100.0 * (1.0 - weighted / total);
}

HealthScore health_score(const RunResult& run, std::string_view project) {
  HealthScore s;
  s.scope = project.empty() ? (run.project.empty() ? "all" : run.project) : std::string(project);
  const EffectiveConfig& cfg = config_of(run, project);
  for (const auto& info : registry()) {
    Contribution c;
    c.detector_id = info.id;
    const EffectiveSetting& setting = cfg.at(info.id);
    c.enabled = setting.enabled;
    c.weight = setting.weight;
    if (auto it = run.cells.find(info.id); it != run.cells.end()) {
      for (const auto& [p, cell] : it->second) {
        if (!project.empty() && p != project) continue;
        c.rate.violating += cell.violating_issues;
        c.rate.applicable += cell.applicable;
      }
    }
    s.contributions.push_back(std::move(c));
  }
  s.score = weighted_score(s.contributions);
  return s;
}

std::string_view to_string(HealthStatus s) {
  switch (s) {
    case HealthStatus::Ok: return "ok";
    case HealthStatus::Violation: return "violation";
    case HealthStatus::NotApplicable: return "not_applicable";
    case HealthStatus::Disabled: return "disabled";
  }
  return "";
}

IssueHealth issue_health(const IssueRecord& issue, const EffectiveConfig& config, const DetectContext& ctx) {
  IssueHealth h;
  h.issue_key = issue.key;
  h.project = issue.project;
  h.basis = ctx.now;
  for (const auto& info : registry()) {
    HealthRow row;
    row.detector_id = info.id;
    const EffectiveSetting& setting = config.at(info.id);
    if (!setting.enabled) {
      row.status = HealthStatus::Disabled;
      row.explanation = "disabled by configuration";
    } else {
      Evaluation ev = evaluate(info.id, issue, setting.params, ctx);
      if (!ev.applicable) {
        row.status = HealthStatus::NotApplicable;
        row.explanation = "does not apply to this issue";
      } else if (ev.violations.empty()) {
        row.status = HealthStatus::Ok;
        row.explanation = "ok";
      } else {
        row.status = HealthStatus::Violation;
        for (const auto& v : ev.violations) {
          if (!row.explanation.empty()) row.explanation += "; ";
          row.explanation += v.explanation;
        }
        row.violations = std::move(ev.violations);
      }
    }
    h.rows.push_back(std::move(row));
  }
  return h;
}

IssueHealth issue_health(const Corpus& corpus, std::string_view key, const EffectiveConfig& config,
                         std::optional<Timestamp> as_of) {
  const IssueRecord* target = corpus.find(key);
  if (!target) throw NotFound(fmt::format("no issue with key '{}'", key));
  const Timestamp now = as_of.value_or(corpus.snapshot());
  if (target->created > now) throw NotFound(fmt::format("issue '{}' did not exist at {}", key, format_timestamp(now)));

  std::vector<IssueRecord> repo;
  for (const auto& issue : corpus.issues()) {
    if (issue.repo != target->repo) continue;
    if (!as_of) {
      repo.push_back(issue);
    } else if (issue.created <= now) {
      repo.push_back(truncate(issue, now));
    }
  }
  std::vector<const IssueRecord*> ptrs;
  const IssueRecord* subject = nullptr;
  for (const auto& issue : repo) {
    ptrs.push_back(&issue);
    if (issue.key == target->key) subject = &issue;
  }
  const ValueUniverse universe = build_universe(ptrs);
  DetectContext ctx{now, &TypeMapper::builtin(), &universe};
  return issue_health(*subject, config, ctx);
}

std::vector<TrendPoint> trend_series(const Corpus& corpus, const ConfigProvider& configs, std::vector<Timestamp> dates,
                                     const std::string& project) {
  std::sort(dates.begin(), dates.end());
  std::vector<TrendPoint> out;
  for (Timestamp t : dates) {
    RunResult run = run_all(corpus, configs, RunOptions{t, project});
    TrendPoint p;
    p.at = t;
    p.score = health_score(run, project);
    for (const auto& c : p.score.contributions) p.rates.emplace(c.detector_id, c.rate);
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Timestamp> date_range(Timestamp from, Timestamp to, Duration step, std::size_t max_points) {
  if (step <= Duration::zero()) throw std::invalid_argument("step must be positive");
  if (to < from) throw std::invalid_argument("range ends before it starts");
  const auto count = static_cast<std::size_t>((to - from) / step) + 1;
  if (count > max_points) {
    throw std::invalid_argument(fmt::format("{} points requested, at most {} allowed", count, max_points));
  }
  std::vector<Timestamp> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(from + step * static_cast<long long>(i));
  return out;
}

json detectors_json() {
  json out = json::array();
  for (const auto& info : registry()) out.push_back(to_json(info));
  return out;
}

json rates_json(const RunResult& run) {
  json out = json::array();
  for (const auto& d : project_rates(run)) {
    const EffectiveSetting& setting = run.config.at(d.detector_id);
    json projects = json::object();
    for (const auto& [p, r] : d.projects) {
      json entry = rate_json(r);
      const auto& cell = run.cells.at(d.detector_id).at(p);
      entry["violations"] = cell.violations;
      entry["not_applicable"] = cell.not_applicable;
      entry["disabled"] = cell.disabled;
      projects[p] = std::move(entry);
    }
    out.push_back({{"detector_id", d.detector_id},
                   {"bp_ids", detector_info(d.detector_id).bp_ids},
                   {"enabled", setting.enabled},
                   {"weight", setting.weight},
                   {"synonyms", synonyms_of(setting)},
                   {"overall", rate_json(d.overall)},
                   {"across_projects", d.across_projects ? to_json(*d.across_projects) : json(nullptr)},
                   {"projects", std::move(projects)}});
  }
  return out;
}

json to_json(const HealthScore& score) {
  json contributions = json::array();
  for (const auto& c : score.contributions) {
    contributions.push_back(
        {{"detector_id", c.detector_id}, {"enabled", c.enabled}, {"weight", c.weight}, {"rate", rate_json(c.rate)}});
  }
  return {{"scope", score.scope}, {"score", opt_json(score.score)}, {"contributions", std::move(contributions)}};
}

json run_json(const RunResult& run) {
  json violations = json::array();
  for (const auto& v : run.violations) violations.push_back(to_json(v));
  json scores = json::object();
  for (const auto& [project, cfg] : run.project_configs) scores[project] = opt_json(health_score(run, project).score);
  return {{"now", format_timestamp(run.now)},
          {"as_of", run.as_of ? json(format_timestamp(*run.as_of)) : json(nullptr)},
          {"project", run.project.empty() ? json(nullptr) : json(run.project)},
          {"issues", run.issues},
          {"score", to_json(health_score(run))},
          {"project_scores", std::move(scores)},
          {"rates", rates_json(run)},
          {"violations", std::move(violations)}};
}

json to_json(const IssueHealth& health) {
  json rows = json::array();
  for (const auto& r : health.rows) {
    json vs = json::array();
    for (const auto& v : r.violations) vs.push_back(to_json(v));
    rows.push_back({{"detector_id", r.detector_id},
                    {"status", to_string(r.status)},
                    {"explanation", r.explanation},
                    {"violations", std::move(vs)}});
  }
  return {{"issue_key", health.issue_key},
          {"project", health.project},
          {"basis", format_timestamp(health.basis)},
          {"rows", std::move(rows)}};
}

json trend_json(const std::vector<TrendPoint>& points) {
  json out = json::array();
  for (const auto& p : points) {
    json rates = json::object();
    for (const auto& [id, r] : p.rates) rates[id] = rate_json(r);
    out.push_back({{"at", format_timestamp(p.at)}, {"score", opt_json(p.score.score)}, {"rates", std::move(rates)}});
  }
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + '\n'; }

std::string csv_cell(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string violations_table(const RunResult& run) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& v : run.violations) rows.push_back({v.issue_key, v.project, v.detector_id, v.explanation});
  std::string out = render({"ISSUE", "PROJECT", "DETECTOR", "EXPLANATION"}, rows);
  const auto score = health_score(run).score;
  out += fmt::format("\n{} violations in {} issues; health score {}\n", run.violations.size(), run.issues,
                     score ? fmt::format("{:.1f}", *score) : std::string("n/a"));
  return out;
}

std::string violations_csv(const RunResult& run) {
  std::string out = csv_row({"issue_key", "project", "detector_id", "basis", "explanation"});
  for (const auto& v : run.violations) {
    out += csv_row({v.issue_key, v.project, v.detector_id, format_timestamp(v.basis), v.explanation});
  }
  return out;
}

std::string rates_table(const RunResult& run) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& d : project_rates(run)) {
    const auto& s = run.config.at(d.detector_id);
    rows.push_back({d.detector_id, s.enabled ? "yes" : "no", std::to_string(s.weight),
                    std::to_string(d.overall.violating), std::to_string(d.overall.applicable), fmt_rate(d.overall),
                    d.across_projects ? fmt::format("{:.1f}%", d.across_projects->median * 100.0) : "n/a"});
  }
  return render({"DETECTOR", "ENABLED", "WEIGHT", "VIOLATING", "APPLICABLE", "RATE", "PROJECT MEDIAN"}, rows);
}

std::string rates_csv(const RunResult& run) {
  std::string out = csv_row({"detector_id", "project", "violating", "applicable", "rate"});
  for (const auto& d : project_rates(run)) {
    for (const auto& [p, r] : d.projects) {
      out += csv_row({d.detector_id, p, std::to_string(r.violating), std::to_string(r.applicable), opt_num(r.value())});
    }
  }
  return out;
}

std::string issue_health_table(const IssueHealth& health) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : health.rows) rows.push_back({r.detector_id, std::string(to_string(r.status)), r.explanation});
  return fmt::format("{} ({}) as of {}\n", health.issue_key, health.project, format_timestamp(health.basis)) +
         render({"PROPERTY", "STATUS", "EXPLANATION"}, rows);
}

std::string stats_csv(std::string_view measure, const std::map<std::string, BoxStats>& stats) {
  std::string out = csv_row({"measure", "group", "statistic", "value"});
  for (const auto& [group, s] : stats) {
    const std::pair<const char*, double> values[] = {{"n", static_cast<double>(s.n)},
                                                     {"lower_whisker", s.lower_whisker},
                                                     {"q1", s.q1},
                                                     {"median", s.median},
                                                     {"q3", s.q3},
                                                     {"upper_whisker", s.upper_whisker}};
    for (const auto& [name, v] : values) out += csv_row({std::string(measure), group, name, num(v)});
  }
  return out;
}

std::string ownership_csv(const std::vector<OwnershipColumn>& table) {
  std::string out = csv_row({"activity", "theme", "row", "percent"});
  for (const auto& c : table) {
    out += csv_row({c.activity, c.theme, "Owner", opt_num(c.owner_percent())});
    out += csv_row({c.activity, c.theme, "Non-Owner", opt_num(c.non_owner_percent())});
    for (OwnershipClass k : {OwnershipClass::CRA, OwnershipClass::CRa, OwnershipClass::crA, OwnershipClass::cRa,
                             OwnershipClass::Cra, OwnershipClass::cRA, OwnershipClass::CrA}) {
      out += csv_row({c.activity, c.theme, std::string(to_string(k)), opt_num(c.class_percent(k))});
    }
  }
  return out;
}

std::string cooccurrence_csv(const std::vector<UsagePattern>& patterns) {
  std::string out = csv_row({"rank", "codes", "count", "percent", "cumulative_percent"});
  std::size_t rank = 0;
  for (const auto& p : patterns) {
    std::string codes;
    for (const auto& c : p.codes) codes += (codes.empty() ? "" : " ") + c;
    out += csv_row({std::to_string(++rank), codes, std::to_string(p.count), fmt::format("{:.2f}", p.percent),
                    fmt::format("{:.2f}", p.cumulative_percent)});
  }
  return out;
}

}  // namespace itelint
