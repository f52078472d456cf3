// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "itelint/analytics.hpp"
#include "itelint/catalogue.hpp"
#include "itelint/config.hpp"
#include "itelint/detectors.hpp"
#include "itelint/ingest.hpp"
#include "itelint/report.hpp"
#include "itelint/service.hpp"
#include "itelint/store.hpp"
#include "itelint/timeutil.hpp"

namespace itelint::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for bad input data; maps to kExitData.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_store(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return false;
  std::ifstream in(path, std::ios::binary);
  std::string line;
  if (!std::getline(in, line)) return false;
  json header = json::parse(line, nullptr, false);
  return header.is_object() && header.value("format", std::string{}) == "itelint-store";
}

// A store written by `ingest`, or a raw dump ingested on the fly.
Corpus load_corpus(const std::string& path) {
  if (is_store(path)) return read_store(fs::path(path));
  return parse_dump(DumpSource{path, ""}).corpus;
}

std::optional<std::string> config_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ITELINT_CONFIG_DIR"); env && *env) return std::string(env);
  return std::nullopt;
}

Context parse_context(const std::vector<std::string>& pairs) {
  Context out;
  for (const auto& p : pairs) {
    auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == p.size()) {
      throw CLI::ValidationError("--context", fmt::format("expected kind=scope, got '{}'", p));
    }
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

std::string registry_table() {
  std::string out = fmt::format("{:<26} {:<10} {:<6} {:<7} {}\n", "DETECTOR", "PRACTICES", "SCOPE", "ENABLED",
                                "DESCRIPTION");
  for (const auto& d : registry()) {
    std::string bps;
    for (const auto& b : d.bp_ids) bps += (bps.empty() ? "" : ",") + b;
    out += fmt::format("{:<26} {:<10} {:<6} {:<7} {}\n", d.id, bps.empty() ? "-" : bps,
                       d.scope == DetectorScope::ITS ? "ITS" : "Issue", d.enabled_by_default ? "yes" : "no",
                       d.description);
  }
  return out;
}

struct Options {
  // ingest
  std::string ingest_path;
  std::string ingest_out;
  std::string repo;
  // shared
  std::string store;
  std::string format;
  std::string config_dir;
  std::vector<std::string> context;
  // lint
  std::string project;
  std::string as_of;
  std::string issue;
  bool list_detectors = false;
  bool fail_on_violation = false;
  // stats
  std::string group_by = "activity";
  bool ownership = false;
  // catalogue
  std::string practice;
  std::string issue_type;
  std::string its_scope;
  std::string smell;
  bool has_detector = false;
  // serve
  int port = 8080;
  std::string host = "127.0.0.1";
};

int do_ingest(const Options& o, std::ostream& out, std::ostream& err) {
  DumpResult r = parse_dump(DumpSource{o.ingest_path, o.repo});
  write_store(fs::path(o.ingest_out), r.corpus);
  if (o.format == "json") {
    out << dump(to_json(r.report));
  } else {
    out << fmt::format("ingested {} issues ({} skipped) into {}\n", r.report.parsed, r.report.skipped(), o.ingest_out);
    for (const auto& m : r.report.messages) err << m << '\n';
  }
  return kExitOk;
}

int do_lint(const Options& o, std::ostream& out) {
  if (o.list_detectors) {
    if (o.format == "json") {
      out << dump(detectors_json());
    } else {
      out << registry_table();
    }
    return kExitOk;
  }
  if (o.store.empty()) throw CLI::RequiredError("store");
  RunOptions options;
  options.project = o.project;
  if (!o.as_of.empty()) {
    options.as_of = parse_timestamp(o.as_of, true);
    if (!options.as_of) throw CLI::ValidationError("--as-of", fmt::format("cannot read date '{}'", o.as_of));
  }
  const Context overrides = parse_context(o.context);
  Corpus corpus = load_corpus(o.store);
  std::unique_ptr<ConfigStore> store;
  ConfigProvider provider = default_provider();
  if (auto dir = config_dir(o.config_dir)) {
    store = std::make_unique<ConfigStore>(*dir);
    provider = store_provider(*store, overrides);
  }

  if (!o.issue.empty()) {
    const IssueRecord* issue = corpus.find(o.issue);
    if (!issue) throw DataError(fmt::format("no issue with key '{}'", o.issue));
    IssueHealth h = issue_health(corpus, o.issue, provider(issue->project), options.as_of);
    if (o.format == "json") {
      out << dump(to_json(h));
    } else {
      out << issue_health_table(h);
    }
    const bool bad = std::any_of(h.rows.begin(), h.rows.end(),
                                 [](const HealthRow& r) { return r.status == HealthStatus::Violation; });
    return bad && o.fail_on_violation ? kExitViolations : kExitOk;
  }

  RunResult run = run_all(corpus, provider, options);
  if (o.format == "json") {
    out << dump(run_json(run));
  } else if (o.format == "csv") {
    out << violations_csv(run);
  } else {
    out << violations_table(run) << '\n' << rates_table(run);
  }
  return !run.violations.empty() && o.fail_on_violation ? kExitViolations : kExitOk;
}

int do_stats(const Options& o, std::ostream& out) {
  Corpus corpus = load_corpus(o.store);
  if (o.ownership) {
    auto table = ownership_table(corpus);
    if (o.format == "json") {
      json doc = json::array();
      for (const auto& c : table) doc.push_back(to_json(c));
      out << dump(doc);
    } else {
      out << ownership_csv(table);
    }
    return kExitOk;
  }
  const GroupBy g = *parse_group_by(o.group_by);
  auto counts = summarize(evolution_counts(corpus, g));
  auto offsets = summarize(evolution_time_offsets(corpus, g));
  if (o.format == "json") {
    json doc = {{"group_by", to_string(g)}, {"evolution_counts", json::object()}, {"time_offsets_days", json::object()}};
    for (const auto& [k, s] : counts) doc["evolution_counts"][k] = to_json(s);
    for (const auto& [k, s] : offsets) doc["time_offsets_days"][k] = to_json(s);
    out << dump(doc);
  } else {
    std::string body = stats_csv("evolution_counts", counts);
    std::string more = stats_csv("time_offsets_days", offsets);
    out << body << more.substr(more.find('\n') + 1);
  }
  return kExitOk;
}

int do_cooccur(const Options& o, std::ostream& out) {
  auto patterns = cooccurrence_rank(load_corpus(o.store));
  if (o.format == "json") {
    json doc = json::array();
    for (const auto& p : patterns) doc.push_back(to_json(p));
    out << dump(doc);
  } else {
    out << cooccurrence_csv(patterns);
  }
  return kExitOk;
}

int do_catalogue_show(const Options& o, std::ostream& out) {
  const BestPractice* bp = Catalogue::builtin().find(o.practice);
  if (!bp) throw DataError(fmt::format("no practice '{}'", o.practice));
  if (o.format == "json") {
    out << dump(to_json(*bp));
  } else {
    out << render_table(*bp);
  }
  return kExitOk;
}

int do_catalogue_list(const Options& o, std::ostream& out) {
  Catalogue::Filter f;
  if (!o.issue_type.empty()) f.issue_type = o.issue_type;
  if (!o.its_scope.empty()) {
    f.its_scope = parse_its_scope(o.its_scope);
    if (!f.its_scope) throw CLI::ValidationError("--scope", fmt::format("unknown scope '{}'", o.its_scope));
  }
  if (o.has_detector) f.has_detector = true;
  if (!o.smell.empty()) f.smell_id = o.smell;
  auto rows = Catalogue::builtin().query(f);
  if (o.format == "json") {
    json doc = json::array();
    for (const auto* bp : rows) doc.push_back(summary_json(*bp));
    out << dump(doc);
  } else {
    for (const auto* bp : rows) {
      out << fmt::format("{:<5} {:<48} {:<9} {}\n", bp->id, bp->name, to_string(bp->its_scope),
                         bp->detector_id.value_or("-"));
    }
  }
  return kExitOk;
}

int do_serve(const Options& o, std::ostream& out) {
  auto dir = config_dir(o.config_dir);
  if (!dir) throw CLI::RequiredError("--config-dir");
  Service service(load_corpus(o.store), *dir);
  const int port = resolve_port(o.port);
  out << fmt::format("serving {} issues on http://{}:{}\n", service.corpus().size(), o.host, port) << std::flush;
  if (!serve(service, o.host, port)) throw DataError(fmt::format("cannot listen on {}:{}", o.host, port));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lint issue tracker data against best practices", "itelint"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::string> formats{"table", "csv", "json"};

  auto* ingest = app.add_subcommand("ingest", "Parse an issue dump into a store");
  ingest->add_option("path", o.ingest_path, "Dump file or directory")->required();
  ingest->add_option("--out", o.ingest_out, "Store file to write")->required();
  ingest->add_option("--repo", o.repo, "Repository name (default: file or directory name)");
  ingest->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"table", "json"}));

  auto* lint = app.add_subcommand("lint", "Detect best practice violations");
  lint->add_option("store", o.store, "Store or dump to lint");
  lint->add_option("--project", o.project, "Only evaluate this project");
  lint->add_option("--as-of", o.as_of, "Evaluate the state at DATE (date-only means end of day UTC)");
  lint->add_option("--config-dir", o.config_dir, "Layer tree (default: $ITELINT_CONFIG_DIR)");
  lint->add_option("--context", o.context, "Pin a layer scope, kind=scope");
  lint->add_option("--issue", o.issue, "Print the health report of one issue");
  lint->add_option("--format", o.format, "Output format")->check(CLI::IsMember(formats));
  lint->add_flag("--list-detectors", o.list_detectors, "List registered detectors");
  lint->add_flag("--fail-on-violation", o.fail_on_violation, "Exit 3 when violations are found");

  auto* stats = app.add_subcommand("stats", "Evolution statistics as CSV");
  stats->add_option("store", o.store, "Store or dump")->required();
  stats->add_option("--group-by", o.group_by, "Grouping")->check(CLI::IsMember({"activity", "theme", "code"}));
  stats->add_flag("--ownership", o.ownership, "Ownership distribution instead");
  stats->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* cooccur = app.add_subcommand("cooccur", "Rank issue type co-occurrence across projects");
  cooccur->add_option("store", o.store, "Store or dump")->required();
  cooccur->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* catalogue = app.add_subcommand("catalogue", "Browse the best practice catalogue");
  catalogue->require_subcommand(1);
  auto* show = catalogue->add_subcommand("show", "Render one practice");
  show->add_option("id", o.practice, "Practice id, e.g. BP13")->required();
  show->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
  auto* list = catalogue->add_subcommand("list", "List practices");
  list->add_option("--issue-type", o.issue_type, "Only practices for this issue type");
  list->add_option("--scope", o.its_scope, "Only practices with this scope");
  list->add_option("--smell", o.smell, "Only practices linked to this smell");
  list->add_flag("--has-detector", o.has_detector, "Only practices with a detector");
  list->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));

  auto* srv = app.add_subcommand("serve", "Serve the JSON API");
  srv->add_option("store", o.store, "Store or dump")->required();
  srv->add_option("--port", o.port, "Port ($ITELINT_PORT overrides)")->check(CLI::Range(1, 65535));
  srv->add_option("--host", o.host, "Address to bind");
  srv->add_option("--config-dir", o.config_dir, "Layer tree (default: $ITELINT_CONFIG_DIR)");

  std::vector<const char*> argv{"itelint"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (ingest->parsed()) return do_ingest(o, out, err);
    if (lint->parsed()) return do_lint(o, out);
    if (stats->parsed()) return do_stats(o, out);
    if (cooccur->parsed()) return do_cooccur(o, out);
    if (show->parsed()) return do_catalogue_show(o, out);
    if (list->parsed()) return do_catalogue_list(o, out);
    if (srv->parsed()) return do_serve(o, out);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "itelint: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace itelint::cli
