// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_SERVICE_HPP_
#define ITELINT_SERVICE_HPP_

#include <filesystem>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "itelint/config.hpp"
#include "itelint/detectors.hpp"
#include "itelint/ingest.hpp"

namespace itelint {

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  /// Header names in lower case.
  std::map<std::string, std::string> headers;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;
  std::map<std::string, std::string> headers;
};

/// Owns one corpus and one config tree. Safe to call from many threads;
/// config writes are serialized and runs are computed off the calling
/// thread.
class Service {
 public:
  Service(Corpus corpus, std::filesystem::path config_dir, KindList kinds = default_kinds());
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  Response handle(const Request& request);

  /// Blocks until every submitted run has finished.
  void wait_idle();

  const Corpus& corpus() const { return corpus_; }
  const ConfigStore& store() const { return store_; }

 private:
  using RunPtr = std::shared_ptr<const RunResult>;
  using CacheKey = std::tuple<std::string, std::optional<Timestamp>, std::string>;

  Response get_config(const std::string& kind, const std::string& scope);
  Response put_config(const Request& request, const std::string& kind, const std::string& scope);
  Response post_run(const Request& request);
  Response get_run(const std::string& id, const std::string& view);
  Response issue_health(const std::string& key, const Request& request);
  Response trends(const Request& request);

  Corpus corpus_;
  ConfigStore store_;
  std::mutex config_mutex_;
  std::mutex runs_mutex_;
  std::map<std::string, std::shared_future<RunPtr>> runs_;
  std::map<CacheKey, std::string> cache_;
  std::size_t next_run_ = 1;
};

/// Port from ITELINT_PORT when set and valid, else `flag`.
int resolve_port(int flag);

/// Blocks serving HTTP on host:port.
bool serve(Service& service, const std::string& host, int port);

}  // namespace itelint

#endif  // ITELINT_SERVICE_HPP_
