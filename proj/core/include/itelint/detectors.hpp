// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_DETECTORS_HPP_
#define ITELINT_DETECTORS_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "itelint/config.hpp"
#include "itelint/ingest.hpp"
#include "itelint/model.hpp"
#include "itelint/params.hpp"
#include "itelint/typemap.hpp"

namespace itelint {

/// Every registered detector, in a fixed order.
const std::vector<DetectorInfo>& registry();

/// Throws UnknownDetectorId.
const DetectorInfo& detector_info(std::string_view id);

struct Violation {
  std::string detector_id;
  std::string issue_key;
  std::string project;
  /// The instant the issue state was evaluated at.
  Timestamp basis{};
  std::string explanation;
  nlohmann::json evidence;

  friend bool operator==(const Violation&, const Violation&) = default;
};

nlohmann::json to_json(const Violation& v);

struct Evaluation {
  bool applicable = false;
  std::vector<Violation> violations;

  friend bool operator==(const Evaluation&, const Evaluation&) = default;
};

/// Historical values of the property fields across one repo.
struct ValueUniverse {
  std::map<FieldCode, std::set<std::string>> values;
};

/// Collects creational, changelog and final values of IssueType, Status,
/// Priority and Resolution.
ValueUniverse build_universe(const std::vector<const IssueRecord*>& issues);

struct DetectContext {
  /// Reference instant for open issues.
  Timestamp now{};
  const TypeMapper* types = &TypeMapper::builtin();
  const ValueUniverse* universe = nullptr;
};

enum class MissingField { Assignee, Priority, Severity, Environment, Components };
enum class TextRule { SufficientDescription, SuccinctDescription, SummaryLength };
enum class CycleField { Status, Assignee };

Evaluation detect_missing_field(const IssueRecord& issue, MissingField field, const Params& params,
                                const DetectContext& ctx);
Evaluation detect_reassignments(const IssueRecord& issue, const Params& params, const DetectContext& ctx);
Evaluation detect_team_assignment(const IssueRecord& issue, const Params& params, const DetectContext& ctx);
Evaluation detect_nonassignee_resolution(const IssueRecord& issue, const Params& params, const DetectContext& ctx);
Evaluation detect_slow_severe_resolution(const IssueRecord& issue, const Params& params, const DetectContext& ctx);
Evaluation detect_activity_gap(const IssueRecord& issue, const Params& params, const DetectContext& ctx);
Evaluation detect_reopen(const IssueRecord& issue, const Params& params, const DetectContext& ctx);
Evaluation detect_no_comments(const IssueRecord& issue, const Params& params, const DetectContext& ctx);
Evaluation detect_text_length(const IssueRecord& issue, TextRule rule, const Params& params, const DetectContext& ctx);
Evaluation detect_cycles(const IssueRecord& issue, CycleField field, const Params& params, const DetectContext& ctx);
Evaluation detect_inconsistent_properties(const IssueRecord& issue, const Params& params, const DetectContext& ctx);

/// Dispatches to the operation behind a registered id.
Evaluation evaluate(std::string_view detector_id, const IssueRecord& issue, const Params& params,
                    const DetectContext& ctx);

/// Groups ascending instants into runs whose consecutive members are less
/// than `window` apart. Returns [first, last] index pairs.
std::vector<std::pair<std::size_t, std::size_t>> collapse_runs(const std::vector<Timestamp>& times, Duration window);

struct RunOptions {
  std::optional<Timestamp> as_of;
  /// Restricts evaluation to one project; empty means all.
  std::string project;
};

struct Cell {
  std::size_t violating_issues = 0;
  std::size_t violations = 0;
  std::size_t applicable = 0;
  std::size_t not_applicable = 0;
  std::size_t disabled = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

struct RunResult {
  /// The reference instant: as_of when given, else the corpus snapshot.
  Timestamp now{};
  std::optional<Timestamp> as_of;
  std::string project;
  std::size_t issues = 0;
  std::vector<Violation> violations;
  /// detector id -> project -> counts.
  std::map<std::string, std::map<std::string, Cell>> cells;
  /// Configuration the run reports weights and synonym lists from.
  EffectiveConfig config;
  /// Configuration each evaluated project ran with.
  std::map<std::string, EffectiveConfig> project_configs;

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

using ConfigProvider = std::function<EffectiveConfig(const std::string& project)>;

/// Resolves each project's layer stack from `store`; `overrides` pins
/// scopes per kind. The store must outlive the provider.
ConfigProvider store_provider(const ConfigStore& store, Context overrides = {});

/// Registry defaults for every project.
ConfigProvider default_provider();

/// Evaluates every enabled detector on every issue in scope. With as_of
/// set, the corpus is first truncated to that instant.
RunResult run_all(const Corpus& corpus, const ConfigProvider& configs, const RunOptions& options = {});
RunResult run_all(const Corpus& corpus, const EffectiveConfig& config, const RunOptions& options = {});

}  // namespace itelint

#endif  // ITELINT_DETECTORS_HPP_
