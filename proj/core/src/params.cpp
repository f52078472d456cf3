// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/params.hpp"

#include <fmt/format.h>

#include "itelint/timeutil.hpp"

namespace itelint {

std::string_view to_string(ParamType type) {
  switch (type) {
    case ParamType::Bool: return "bool";
    case ParamType::Int: return "int";
    case ParamType::Float: return "float";
    case ParamType::Duration: return "duration";
    case ParamType::String: return "string";
    case ParamType::StringList: return "string_list";
  }
  return "unknown";
}

std::string_view to_string(DetectorScope scope) { return scope == DetectorScope::Issue ? "Issue" : "ITS"; }

nlohmann::json param_to_json(const ParamValue& value) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, Duration>) {
          return format_duration(v);
        } else {
          return v;
        }
      },
      value);
}

std::optional<ParamValue> param_from_json(const nlohmann::json& value, ParamType type) {
  switch (type) {
    case ParamType::Bool:
      if (value.is_boolean()) return value.get<bool>();
      break;
    case ParamType::Int:
      if (value.is_number_integer()) return value.get<long long>();
      break;
    case ParamType::Float:
      if (value.is_number()) return value.get<double>();
      break;
    case ParamType::Duration:
      if (value.is_string()) {
        if (auto d = parse_duration(value.get<std::string>())) return *d;
      } else if (value.is_number() && value.get<double>() >= 0) {
        return Duration(static_cast<long long>(value.get<double>() * 86'400'000.0 + 0.5));
      }
      break;
    case ParamType::String:
      if (value.is_string()) return value.get<std::string>();
      break;
    case ParamType::StringList:
      if (value.is_array()) {
        std::vector<std::string> out;
        for (const auto& item : value) {
          if (!item.is_string()) return std::nullopt;
          out.push_back(item.get<std::string>());
        }
        return out;
      }
      break;
  }
  return std::nullopt;
}

bool holds_type(const ParamValue& value, ParamType type) {
  switch (type) {
    case ParamType::Bool: return std::holds_alternative<bool>(value);
    case ParamType::Int: return std::holds_alternative<long long>(value);
    case ParamType::Float: return std::holds_alternative<double>(value);
    case ParamType::Duration: return std::holds_alternative<Duration>(value);
    case ParamType::String: return std::holds_alternative<std::string>(value);
    case ParamType::StringList: return std::holds_alternative<std::vector<std::string>>(value);
  }
  return false;
}

const ParamSpec* DetectorInfo::param(std::string_view name) const {
  for (const auto& p : params) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const ParamValue& Params::at(std::string_view name) const {
  auto it = values_.find(std::string(name));
  if (it == values_.end()) throw ParamError(fmt::format("no parameter '{}'", name));
  return it->second;
}

namespace {

template <typename T>
const T& typed(const ParamValue& v, std::string_view name) {
  if (const T* p = std::get_if<T>(&v)) return *p;
  throw ParamError(fmt::format("parameter '{}' has a different type", name));
}

}  // namespace

bool Params::get_bool(std::string_view name) const { return typed<bool>(at(name), name); }
long long Params::get_int(std::string_view name) const { return typed<long long>(at(name), name); }
double Params::get_float(std::string_view name) const { return typed<double>(at(name), name); }
Duration Params::get_duration(std::string_view name) const { return typed<Duration>(at(name), name); }
const std::string& Params::get_string(std::string_view name) const { return typed<std::string>(at(name), name); }
const std::vector<std::string>& Params::get_list(std::string_view name) const {
  return typed<std::vector<std::string>>(at(name), name);
}

Params default_params(const DetectorInfo& info) {
  Params p;
  for (const auto& spec : info.params) p.set(spec.name, spec.default_value);
  return p;
}

nlohmann::json to_json(const ParamSpec& spec) {
  return {{"name", spec.name},
          {"type", to_string(spec.type)},
          {"default", param_to_json(spec.default_value)},
          {"description", spec.description}};
}

nlohmann::json to_json(const DetectorInfo& info) {
  nlohmann::json params = nlohmann::json::array();
  for (const auto& p : info.params) params.push_back(to_json(p));
  return {{"id", info.id},
          {"bp_ids", info.bp_ids},
          {"scope", to_string(info.scope)},
          {"description", info.description},
          {"enabled_by_default", info.enabled_by_default},
          {"default_weight", info.default_weight},
          {"params", std::move(params)}};
}

}  // namespace itelint
