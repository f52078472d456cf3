// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_ANALYTICS_HPP_
#define ITELINT_ANALYTICS_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "itelint/evolution.hpp"
#include "itelint/ingest.hpp"
#include "itelint/typemap.hpp"

namespace itelint {

class EmptyInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BoxStats {
  double median = 0;
  double q1 = 0;
  double q3 = 0;
  double lower_whisker = 0;
  double upper_whisker = 0;
  std::size_t n = 0;

  double iqr() const { return q3 - q1; }
  friend bool operator==(const BoxStats&, const BoxStats&) = default;
};

/// Quartiles are medians of the lower and upper halves; for odd n the
/// median element belongs to neither half. Whiskers are the most extreme
/// values within 1.5 IQR of the box. Throws EmptyInput.
BoxStats box_stats(std::vector<double> values);

nlohmann::json to_json(const BoxStats& s);

/// Issue type or field theme of an issue, as used for grouping.
TypeCode issue_type_of(const IssueRecord& issue, const TypeMapper& types = TypeMapper::builtin());

enum class GroupBy { Activity, Theme, Code };

std::string_view to_string(GroupBy g);
std::optional<GroupBy> parse_group_by(std::string_view name);

/// Group label -> sample.
using Distribution = std::map<std::string, std::vector<double>>;

/// Post-creational evolutions per issue. Activity and code group by issue
/// type; theme yields one value per issue and theme, zeros included.
Distribution evolution_counts(const Corpus& corpus, GroupBy group_by);

/// Days from creation to each post-creational evolution. Activity and code
/// group by issue type; theme groups by the evolved field.
Distribution evolution_time_offsets(const Corpus& corpus, GroupBy group_by);

std::map<std::string, BoxStats> summarize(const Distribution& d);

struct OwnershipColumn {
  std::string activity;
  std::string theme;
  std::size_t owner = 0;
  std::size_t non_owner = 0;
  /// Events without an author; outside both percentages.
  std::size_t unknown = 0;
  std::map<OwnershipClass, std::size_t> classes;

  std::optional<double> owner_percent() const;
  std::optional<double> non_owner_percent() const;
  /// Share of owner events, in percent.
  std::optional<double> class_percent(OwnershipClass c) const;
};

/// Columns: every activity x theme pair seen, each activity over all
/// themes, each theme over all activities, and the overall column.
/// Labels use "All" for the aggregate side.
std::vector<OwnershipColumn> ownership_table(const Corpus& corpus);

nlohmann::json to_json(const OwnershipColumn& c);

/// Ranks project usage sets of the twelve artifact codes. UserSupport and
/// Other codes are left out of the sets.
std::vector<UsagePattern> cooccurrence_rank(const Corpus& corpus, const TypeMapper& types = TypeMapper::builtin());

}  // namespace itelint

#endif  // ITELINT_ANALYTICS_HPP_
