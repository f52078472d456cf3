// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_REPORT_HPP_
#define ITELINT_REPORT_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "itelint/analytics.hpp"
#include "itelint/detectors.hpp"

namespace itelint {

struct Rate {
  std::size_t violating = 0;
  std::size_t applicable = 0;

  /// Empty when nothing was applicable.
  std::optional<double> value() const;
  friend bool operator==(const Rate&, const Rate&) = default;
};

struct DetectorRates {
  std::string detector_id;
  std::map<std::string, Rate> projects;
  /// Pooled over all projects in scope.
  Rate overall;
  /// Over projects with at least one applicable issue.
  std::optional<BoxStats> across_projects;
};

std::vector<DetectorRates> project_rates(const RunResult& run);

struct Contribution {
  std::string detector_id;
  bool enabled = false;
  int weight = 0;
  Rate rate;
};

struct HealthScore {
  std::string scope;
  /// Empty when no enabled detector had an applicable issue.
  std::optional<double> score;
  std::vector<Contribution> contributions;
};

/// 100 x (1 - sum(w * rate) / sum(w)) over enabled contributions with
/// applicable issues.
std::optional<double> weighted_score(const std::vector<Contribution>& contributions);

/// Empty project scores the whole run with the run's configuration.
HealthScore health_score(const RunResult& run, std::string_view project = "");

enum class HealthStatus { Ok, Violation, NotApplicable, Disabled };

std::string_view to_string(HealthStatus s);

struct HealthRow {
  std::string detector_id;
  HealthStatus status = HealthStatus::Ok;
  std::string explanation;
  std::vector<Violation> violations;
};

struct IssueHealth {
  std::string issue_key;
  std::string project;
  Timestamp basis{};
  std::vector<HealthRow> rows;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row per registered detector.
IssueHealth issue_health(const IssueRecord& issue, const EffectiveConfig& config, const DetectContext& ctx);

/// Evaluates `key` against its repo, truncated to as_of when given. Throws
/// NotFound for unknown keys and for issues created after as_of.
IssueHealth issue_health(const Corpus& corpus, std::string_view key, const EffectiveConfig& config,
                         std::optional<Timestamp> as_of = std::nullopt);

struct TrendPoint {
  Timestamp at{};
  HealthScore score;
  std::map<std::string, Rate> rates;
};

/// One run per date, ascending.
std::vector<TrendPoint> trend_series(const Corpus& corpus, const ConfigProvider& configs,
                                     std::vector<Timestamp> dates, const std::string& project = "");

inline constexpr std::size_t kMaxTrendPoints = 500;

/// from, from + step, ... up to and including to. Throws
/// std::invalid_argument on a non-positive step or more than `max_points`.
std::vector<Timestamp> date_range(Timestamp from, Timestamp to, Duration step,
                                  std::size_t max_points = kMaxTrendPoints);

// Shared renderers. The CLI and the HTTP service both emit these documents.

nlohmann::json detectors_json();
nlohmann::json run_json(const RunResult& run);
nlohmann::json rates_json(const RunResult& run);
nlohmann::json to_json(const HealthScore& score);
nlohmann::json to_json(const IssueHealth& health);
nlohmann::json trend_json(const std::vector<TrendPoint>& points);

/// Two-space indented text, newline terminated.
std::string dump(const nlohmann::json& doc);

std::string violations_table(const RunResult& run);
std::string violations_csv(const RunResult& run);
std::string rates_table(const RunResult& run);
std::string rates_csv(const RunResult& run);
std::string issue_health_table(const IssueHealth& health);

/// One row per (group, statistic).
std::string stats_csv(std::string_view measure, const std::map<std::string, BoxStats>& stats);
std::string ownership_csv(const std::vector<OwnershipColumn>& table);
std::string cooccurrence_csv(const std::vector<UsagePattern>& patterns);

/// Quotes a CSV cell when needed.
std::string csv_cell(std::string_view value);

}  // namespace itelint

#endif  // ITELINT_REPORT_HPP_
