// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/timeutil.hpp"

#include <cctype>
#include <charconv>

#include <fmt/format.h>

namespace itelint {
namespace {

namespace chr = std::chrono;

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  bool done() const { return pos_ >= s_.size(); }
  char peek() const { return done() ? '\0' : s_[pos_]; }
  bool eat(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::optional<int> digits(std::size_t n) {
    if (pos_ + n > s_.size()) return std::nullopt;
    int v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char c = s_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
      v = v * 10 + (c - '0');
    }
    pos_ += n;
    return v;
  }
  // Fractional seconds of any length, returned as milliseconds.
  int fraction_ms() {
    int ms = 0;
    int scale = 100;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      ms += (s_[pos_] - '0') * scale;
      scale /= 10;
      ++pos_;
    }
    return ms;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text, bool date_is_end_of_day) {
  Cursor c(text);
  auto y = c.digits(4);
  if (!y || !c.eat('-')) return std::nullopt;
  auto mo = c.digits(2);
  if (!mo || !c.eat('-')) return std::nullopt;
  auto d = c.digits(2);
  if (!d) return std::nullopt;
  chr::year_month_day ymd{chr::year{*y}, chr::month{static_cast<unsigned>(*mo)}, chr::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  Timestamp base = chr::time_point_cast<chr::milliseconds>(chr::sys_days{ymd});
  if (c.done()) {
    return date_is_end_of_day ? base + chr::hours(24) - chr::milliseconds(1) : base;
  }
  if (!c.eat('T') && !c.eat(' ')) return std::nullopt;
  auto hh = c.digits(2);
  if (!hh || !c.eat(':')) return std::nullopt;
  auto mm = c.digits(2);
  if (!mm) return std::nullopt;
  int ss = 0;
  int ms = 0;
  if (c.eat(':')) {
    auto s = c.digits(2);
    if (!s) return std::nullopt;
    ss = *s;
    if (c.eat('.') || c.eat(',')) ms = c.fraction_ms();
  }
  if (*hh > 23 || *mm > 59 || ss > 60) return std::nullopt;
  Timestamp t = base + chr::hours(*hh) + chr::minutes(*mm) + chr::seconds(ss) + chr::milliseconds(ms);
  if (c.done() || c.eat('Z')) return c.done() ? std::optional(t) : std::nullopt;
  int sign = 0;
  if (c.eat('+')) {
    sign = 1;
  } else if (c.eat('-')) {
    sign = -1;
  } else {
    return std::nullopt;
  }
  auto oh = c.digits(2);
  if (!oh) return std::nullopt;
  c.eat(':');
  auto om = c.digits(2);
  if (!om || !c.done()) return std::nullopt;
  return t - sign * (chr::hours(*oh) + chr::minutes(*om));
}

std::string format_timestamp(Timestamp t) {
  auto day_point = chr::floor<chr::days>(t);
  chr::year_month_day ymd{day_point};
  chr::hh_mm_ss<chr::milliseconds> tod{t - day_point};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:03d}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     tod.hours().count(), tod.minutes().count(), tod.seconds().count(),
                     tod.subseconds().count());
}

std::optional<Duration> parse_duration(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || value < 0) return std::nullopt;
  std::string_view unit(ptr, text.data() + text.size() - ptr);
  double ms_per_unit = 0;
  if (unit.empty() || unit == "d") {
    ms_per_unit = 86'400'000.0;
  } else if (unit == "h") {
    ms_per_unit = 3'600'000.0;
  } else if (unit == "m" || unit == "min") {
    ms_per_unit = 60'000.0;
  } else if (unit == "s") {
    ms_per_unit = 1'000.0;
  } else if (unit == "ms") {
    ms_per_unit = 1.0;
  } else if (unit == "w") {
    ms_per_unit = 7 * 86'400'000.0;
  } else {
    return std::nullopt;
  }
  return Duration(static_cast<long long>(value * ms_per_unit + 0.5));
}

std::string format_duration(Duration d) {
  const long long ms = d.count();
  struct Unit {
    long long ms;
    const char* suffix;
  };
  constexpr Unit kUnits[] = {{86'400'000, "d"}, {3'600'000, "h"}, {60'000, "m"}, {1'000, "s"}};
  for (const auto& u : kUnits) {
    if (ms != 0 && ms % u.ms == 0) return fmt::format("{}{}", ms / u.ms, u.suffix);
  }
  return fmt::format("{}ms", ms);
}

double to_days(Duration d) { return static_cast<double>(d.count()) / 86'400'000.0; }

}  // namespace itelint
