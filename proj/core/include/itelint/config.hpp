// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_CONFIG_HPP_
#define ITELINT_CONFIG_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "itelint/params.hpp"

namespace itelint {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DuplicateLayerKind : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class UnknownLayerKind : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class UnknownDetectorId : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class ParamTypeMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class WeightOutOfRange : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class LayerFormatError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Layer kinds ordered from lowest to highest precedence.
using KindList = std::vector<std::string>;

const KindList& default_kinds();

/// Partial settings for one detector. Unset members inherit.
struct LayerEntry {
  std::optional<bool> enabled;
  std::map<std::string, nlohmann::json> params;
  std::optional<int> weight;

  bool empty() const { return !enabled && params.empty() && !weight; }
  friend bool operator==(const LayerEntry&, const LayerEntry&) = default;
};

struct ConfigLayer {
  std::string kind;
  std::string scope;
  std::map<std::string, LayerEntry> detectors;

  friend bool operator==(const ConfigLayer&, const ConfigLayer&) = default;
};

/// Parses a layer document. Throws LayerFormatError when the document does
/// not have the layer shape; semantic problems are left to validate_layer.
ConfigLayer layer_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ConfigLayer& layer);

struct LayerIssue {
  std::string detector;
  std::string key;
  std::string rule;
  std::string detail;
};

nlohmann::json to_json(const LayerIssue& issue);

std::vector<LayerIssue> validate_layer(const ConfigLayer& layer, std::span<const DetectorInfo> registry,
                                       const KindList& kinds = default_kinds());

/// Also reports shape problems that would make layer_from_json throw.
std::vector<LayerIssue> validate_layer(const nlohmann::json& doc, std::span<const DetectorInfo> registry,
                                       const KindList& kinds = default_kinds());

struct EffectiveSetting {
  bool enabled = true;
  Params params;
  int weight = 5;

  friend bool operator==(const EffectiveSetting&, const EffectiveSetting&) = default;
};

struct EffectiveConfig {
  std::map<std::string, EffectiveSetting> detectors;

  const EffectiveSetting& at(std::string_view id) const;
  bool enabled(std::string_view id) const { return at(id).enabled; }
  std::string fingerprint() const;

  friend bool operator==(const EffectiveConfig&, const EffectiveConfig&) = default;
};

nlohmann::json to_json(const EffectiveConfig& config);

EffectiveConfig defaults(std::span<const DetectorInfo> registry);

/// Per-key resolution: the highest-precedence layer setting a key wins,
/// otherwise the registry default applies.
EffectiveConfig resolve(const std::vector<ConfigLayer>& layers, std::span<const DetectorInfo> registry,
                        const KindList& kinds = default_kinds());

/// A layer of `kind` that sets every key of `config`.
ConfigLayer as_layer(const EffectiveConfig& config, std::string kind, std::string scope = "virtual");

/// Which scope applies for each layer kind in one evaluation context.
using Context = std::map<std::string, std::string>;

/// Layer files live at <root>/<kind>/<scope>.json. An optional
/// <root>/contexts.json maps projects to teams: {"teams": {"PROJ": "team"}}.
class ConfigStore {
 public:
  explicit ConfigStore(std::filesystem::path root, KindList kinds = default_kinds());

  const std::filesystem::path& root() const { return root_; }
  const KindList& kinds() const { return kinds_; }

  std::filesystem::path path_for(std::string_view kind, std::string_view scope) const;
  std::optional<ConfigLayer> load(std::string_view kind, std::string_view scope) const;
  std::optional<nlohmann::json> load_document(std::string_view kind, std::string_view scope) const;

  /// Writes via a temporary file and rename.
  void write(std::string_view kind, std::string_view scope, const nlohmann::json& doc) const;

  /// Context for issues of `project`; `overrides` wins per kind.
  Context context_for(std::string_view project, const Context& overrides = {}) const;
  std::vector<ConfigLayer> stack_for(const Context& context) const;
  EffectiveConfig effective_for(const Context& context, std::span<const DetectorInfo> registry) const;

  /// Content hash over every layer file and the context map.
  std::string fingerprint() const;

 private:
  std::filesystem::path root_;
  KindList kinds_;
};

/// Scope and kind names are restricted to [A-Za-z0-9._-] and may not start with '.'.
bool valid_name(std::string_view name);

std::string content_hash(std::string_view data);

}  // namespace itelint

#endif  // ITELINT_CONFIG_HPP_
