// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_PARAMS_HPP_
#define ITELINT_PARAMS_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "itelint/model.hpp"

namespace itelint {

enum class ParamType { Bool, Int, Float, Duration, String, StringList };

std::string_view to_string(ParamType type);

using ParamValue = std::variant<bool, long long, double, Duration, std::string, std::vector<std::string>>;

/// Renders a value in the form layer files use (durations as "7d").
nlohmann::json param_to_json(const ParamValue& value);

/// Converts a layer-file value to `type`. Durations accept "5m"-style
/// strings or a plain number of days; floats accept integers.
std::optional<ParamValue> param_from_json(const nlohmann::json& value, ParamType type);

bool holds_type(const ParamValue& value, ParamType type);

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::Int;
  ParamValue default_value;
  std::string description;
};

enum class DetectorScope { Issue, ITS };

std::string_view to_string(DetectorScope scope);

/// Static description of a registered detector.
struct DetectorInfo {
  std::string id;
  std::vector<std::string> bp_ids;
  DetectorScope scope = DetectorScope::Issue;
  std::string description;
  std::vector<ParamSpec> params;
  bool enabled_by_default = true;
  int default_weight = 5;

  const ParamSpec* param(std::string_view name) const;
};

inline constexpr int kMinWeight = 1;
inline constexpr int kMaxWeight = 12;

class ParamError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved parameter values of one detector.
class Params {
 public:
  Params() = default;
  explicit Params(std::map<std::string, ParamValue> values) : values_(std::move(values)) {}

  bool get_bool(std::string_view name) const;
  long long get_int(std::string_view name) const;
  double get_float(std::string_view name) const;
  Duration get_duration(std::string_view name) const;
  const std::string& get_string(std::string_view name) const;
  const std::vector<std::string>& get_list(std::string_view name) const;

  const std::map<std::string, ParamValue>& values() const { return values_; }
  void set(const std::string& name, ParamValue value) { values_.insert_or_assign(name, std::move(value)); }

  friend bool operator==(const Params&, const Params&) = default;

 private:
  const ParamValue& at(std::string_view name) const;

  std::map<std::string, ParamValue> values_;
};

/// Registry defaults for every parameter of `info`.
Params default_params(const DetectorInfo& info);

nlohmann::json to_json(const ParamSpec& spec);
nlohmann::json to_json(const DetectorInfo& info);

}  // namespace itelint

#endif  // ITELINT_PARAMS_HPP_
