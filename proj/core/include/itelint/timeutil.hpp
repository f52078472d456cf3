// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_TIMEUTIL_HPP_
#define ITELINT_TIMEUTIL_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "itelint/model.hpp"

namespace itelint {

/// Parses ISO-8601 / Jira timestamps such as "2019-03-30T20:59:00.000+0000",
/// "2019-03-30T20:59:00Z" or "2019-03-30 20:59:00+01:00" into UTC.
/// A bare date ("2019-03-30") is midnight UTC unless `date_is_end_of_day`.
std::optional<Timestamp> parse_timestamp(std::string_view text, bool date_is_end_of_day = false);

/// "2019-03-30T20:59:00.000Z"
std::string format_timestamp(Timestamp t);

/// Accepts "5m", "2h", "7d", "90d", "30s", "1500ms" or a bare number of days.
std::optional<Duration> parse_duration(std::string_view text);

/// Shortest exact rendering, e.g. "5m", "7d", "36h".
std::string format_duration(Duration d);

double to_days(Duration d);

constexpr Duration days(long long n) { return std::chrono::duration_cast<Duration>(std::chrono::hours(24 * n)); }
constexpr Duration minutes(long long n) { return std::chrono::duration_cast<Duration>(std::chrono::minutes(n)); }

}  // namespace itelint

#endif  // ITELINT_TIMEUTIL_HPP_
