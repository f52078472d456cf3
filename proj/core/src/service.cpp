// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/service.hpp"

#include <charconv>
#include <cstdlib>

#include <fmt/format.h>
#include <httplib.h>

#include "itelint/catalogue.hpp"
#include "itelint/report.hpp"
#include "itelint/text.hpp"
#include "itelint/timeutil.hpp"

namespace itelint {
namespace {

using nlohmann::json;

Response json_response(int status, const json& doc) {
  return {status, dump(doc), {{"Content-Type", "application/json"}}};
}

Response error(int status, std::string_view message) { return json_response(status, {{"error", message}}); }

std::vector<std::string> segments(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    std::size_t j = path.find('/', i);
    if (j == std::string_view::npos) j = path.size();
    if (j > i) out.emplace_back(path.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::string> param(const Request& r, const std::string& name) {
  auto it = r.query.find(name);
  if (it == r.query.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::string quoted(const std::string& tag) { return '"' + tag + '"'; }

std::string unquote(std::string_view tag) {
  tag = text::trim(tag);
  if (tag.size() >= 2 && tag.front() == '"' && tag.back() == '"') tag = tag.substr(1, tag.size() - 2);
  return std::string(tag);
}

}  // namespace

Service::Service(Corpus corpus, std::filesystem::path config_dir, KindList kinds)
    : corpus_(std::move(corpus)), store_(std::move(config_dir), std::move(kinds)) {}

Service::~Service() { wait_idle(); }

void Service::wait_idle() {
  std::vector<std::shared_future<RunPtr>> pending;
  {
    std::lock_guard lock(runs_mutex_);
    for (const auto& [id, f] : runs_) pending.push_back(f);
  }
  for (auto& f : pending) f.wait();
}

Response Service::handle(const Request& request) {
  try {
    const auto seg = segments(request.path);
    const std::string& m = request.method;
    if (seg.empty()) return error(404, "not found");
    const std::string& root = seg[0];
    if (root == "detectors" && seg.size() == 1 && m == "GET") return json_response(200, detectors_json());
    if (root == "catalogue" && m == "GET") {
      const Catalogue& cat = Catalogue::builtin();
      if (seg.size() == 1) {
        Catalogue::Filter filter;
        filter.issue_type = param(request, "issue_type");
        if (auto s = param(request, "its_scope")) {
          filter.its_scope = parse_its_scope(*s);
          if (!filter.its_scope) return error(400, fmt::format("unknown scope '{}'", *s));
        }
        if (auto d = param(request, "has_detector")) filter.has_detector = *d == "true" || *d == "1";
        filter.smell_id = param(request, "smell_id");
        json out = json::array();
        for (const auto* bp : cat.query(filter)) out.push_back(summary_json(*bp));
        return json_response(200, out);
      }
      if (seg.size() == 2) {
        const BestPractice* bp = cat.find(seg[1]);
        if (!bp) return error(404, fmt::format("no practice '{}'", seg[1]));
        return json_response(200, to_json(*bp));
      }
    }
    if (root == "config" && seg.size() == 3) {
      if (!valid_name(seg[1]) || !valid_name(seg[2])) return error(400, "invalid layer name");
      if (m == "GET") return get_config(seg[1], seg[2]);
      if (m == "PUT") return put_config(request, seg[1], seg[2]);
    }
    if (root == "runs") {
      if (seg.size() == 1 && m == "POST") return post_run(request);
      if (seg.size() == 2 && m == "GET") return get_run(seg[1], "");
      if (seg.size() == 3 && m == "GET") return get_run(seg[1], seg[2]);
    }
    if (root == "issues" && seg.size() == 3 && seg[2] == "health" && m == "GET") return issue_health(seg[1], request);
    if (root == "trends" && seg.size() == 1 && m == "GET") return trends(request);
    return error(404, "not found");
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

Response Service::get_config(const std::string& kind, const std::string& scope) {
  std::lock_guard lock(config_mutex_);
  if (std::find(store_.kinds().begin(), store_.kinds().end(), kind) == store_.kinds().end()) {
    return error(404, fmt::format("unknown layer kind '{}'", kind));
  }
  auto doc = store_.load_document(kind, scope);
  if (!doc) return error(404, fmt::format("no layer {}/{}", kind, scope));
  Response r = json_response(200, *doc);
  r.headers["ETag"] = quoted(content_hash(doc->dump()));
  return r;
}

Response Service::put_config(const Request& request, const std::string& kind, const std::string& scope) {
  json doc = json::parse(request.body, nullptr, false);
  if (doc.is_discarded()) return error(400, "body is not JSON");
  if (doc.is_object()) {
    doc["kind"] = kind;
    doc["scope"] = scope;
  }
  auto issues = validate_layer(doc, registry(), store_.kinds());
  if (!issues.empty()) {
    json report = json::array();
    for (const auto& i : issues) report.push_back(to_json(i));
    return json_response(422, {{"error", "invalid layer"}, {"issues", std::move(report)}});
  }
  std::lock_guard lock(config_mutex_);
  auto current = store_.load_document(kind, scope);
  if (auto it = request.headers.find("if-match"); it != request.headers.end()) {
    const std::string want = unquote(it->second);
    const bool matches = want == "*" ? current.has_value()
                                     : current.has_value() && want == content_hash(current->dump());
    if (!matches) return error(409, "layer changed since it was read");
  }
  store_.write(kind, scope, doc);
  {
    std::lock_guard runs(runs_mutex_);
    cache_.clear();
  }
  Response r = json_response(200, doc);
  r.headers["ETag"] = quoted(content_hash(doc.dump()));
  return r;
}

Response Service::post_run(const Request& request) {
  json body = request.body.empty() ? json::object() : json::parse(request.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) return error(400, "body must be a JSON object");
  RunOptions options;
  auto as_of = body.find("as_of");
  if (as_of != body.end() && !as_of->is_null()) {
    if (!as_of->is_string()) return error(400, "as_of must be a timestamp");
    options.as_of = parse_timestamp(as_of->get<std::string>(), true);
    if (!options.as_of) return error(400, fmt::format("bad as_of '{}'", as_of->get<std::string>()));
  }
  const json* filters = body.contains("filters") ? &body["filters"] : &body;
  if (filters->is_object()) {
    if (auto p = filters->find("project"); p != filters->end() && p->is_string()) options.project = p->get<std::string>();
  }

  std::lock_guard config_lock(config_mutex_);
  std::lock_guard lock(runs_mutex_);
  CacheKey key{store_.fingerprint(), options.as_of, options.project};
  std::string id;
  int status = 202;
  if (auto it = cache_.find(key); it != cache_.end()) {
    id = it->second;
    status = 200;
  } else {
    id = fmt::format("run-{}", next_run_++);
    // The provider reads layer files when the run starts; the cache is
    // cleared on every write so a stale result is never served.
    runs_[id] = std::async(std::launch::async, [this, options] {
                  return RunPtr(std::make_shared<const RunResult>(run_all(corpus_, store_provider(store_), options)));
                }).share();
    cache_[key] = id;
  }
  return json_response(status, {{"id", id}, {"status", runs_[id].wait_for(std::chrono::seconds(0)) ==
                                                                  std::future_status::ready
                                                              ? "done"
                                                              : "pending"}});
}

Response Service::get_run(const std::string& id, const std::string& view) {
  std::shared_future<RunPtr> f;
  {
    std::lock_guard lock(runs_mutex_);
    auto it = runs_.find(id);
    if (it == runs_.end()) return error(404, fmt::format("no run '{}'", id));
    f = it->second;
  }
  if (f.wait_for(std::chrono::seconds(0)) != std::future_status::ready) {
    return json_response(202, {{"id", id}, {"status", "pending"}});
  }
  const RunResult& run = *f.get();
  if (view.empty()) return json_response(200, run_json(run));
  if (view == "projects") return json_response(200, rates_json(run));
  if (view == "score") return json_response(200, to_json(health_score(run)));
  return error(404, "not found");
}

Response Service::issue_health(const std::string& key, const Request& request) {
  std::optional<Timestamp> as_of;
  if (auto a = param(request, "as_of")) {
    as_of = parse_timestamp(*a, true);
    if (!as_of) return error(400, fmt::format("bad as_of '{}'", *a));
  }
  const IssueRecord* issue = corpus_.find(key);
  if (!issue) return error(404, fmt::format("no issue with key '{}'", key));
  EffectiveConfig config;
  {
    std::lock_guard lock(config_mutex_);
    config = store_.effective_for(store_.context_for(issue->project), registry());
  }
  try {
    return json_response(200, to_json(itelint::issue_health(corpus_, key, config, as_of)));
  } catch (const NotFound& e) {
    return error(404, e.what());
  }
}

Response Service::trends(const Request& request) {
  auto from_s = param(request, "from");
  auto to_s = param(request, "to");
  if (!from_s || !to_s) return error(400, "from and to are required");
  auto from = parse_timestamp(*from_s, true);
  auto to = parse_timestamp(*to_s, true);
  if (!from || !to) return error(400, "from and to must be timestamps");
  Duration step = days(7);
  if (auto s = param(request, "step")) {
    auto d = parse_duration(*s);
    if (!d) return error(400, fmt::format("bad step '{}'", *s));
    step = *d;
  }
  std::vector<Timestamp> dates;
  try {
    dates = date_range(*from, *to, step);
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  }
  const std::string project = param(request, "project").value_or("");
  std::lock_guard lock(config_mutex_);
  return json_response(200, trend_json(trend_series(corpus_, store_provider(store_), dates, project)));
}

int resolve_port(int flag) {
  if (const char* env = std::getenv("ITELINT_PORT")) {
    int port = 0;
    std::string_view s(env);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), port);
    if (ec == std::errc{} && p == s.data() + s.size() && port > 0 && port < 65536) return port;
  }
  return flag;
}

bool serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  auto adapter = [&service](const httplib::Request& req, httplib::Response& res) {
    Request r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query.emplace(k, v);
    for (const auto& [k, v] : req.headers) r.headers.emplace(text::to_lower(k), v);
    r.body = req.body;
    Response out = service.handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) {
      if (k != "Content-Type") res.set_header(k, v);
    }
    res.set_content(out.body, "application/json");
  };
  server.Get(".*", adapter);
  server.Post(".*", adapter);
  server.Put(".*", adapter);
  return server.listen(host, port);
}

}  // namespace itelint
