// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include "itelint/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace itelint {
namespace fs = std::filesystem;
using nlohmann::json;

const KindList& default_kinds() {
  static const KindList kKinds = {"organisation", "team", "project", "sprint", "individual"};
  return kKinds;
}

bool valid_name(std::string_view name) {
  if (name.empty() || name.front() == '.' || name.size() > 128) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
           c == '-';
  });
}

std::string content_hash(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return fmt::format("{:016x}", h);
}

ConfigLayer layer_from_json(const json& doc) {
  if (!doc.is_object()) throw LayerFormatError("layer document must be an object");
  ConfigLayer layer;
  if (auto it = doc.find("kind"); it != doc.end()) {
    if (!it->is_string()) throw LayerFormatError("'kind' must be a string");
    layer.kind = it->get<std::string>();
  }
  if (auto it = doc.find("scope"); it != doc.end()) {
    if (!it->is_string()) throw LayerFormatError("'scope' must be a string");
    layer.scope = it->get<std::string>();
  }
  auto dets = doc.find("detectors");
  if (dets == doc.end()) return layer;
  if (!dets->is_object()) throw LayerFormatError("'detectors' must be an object");
  for (const auto& [id, body] : dets->items()) {
    if (!body.is_object()) throw LayerFormatError(fmt::format("settings for '{}' must be an object", id));
    LayerEntry entry;
    if (auto it = body.find("enabled"); it != body.end()) {
      if (!it->is_boolean()) throw LayerFormatError(fmt::format("'{}.enabled' must be a boolean", id));
      entry.enabled = it->get<bool>();
    }
    if (auto it = body.find("weight"); it != body.end()) {
      if (!it->is_number_integer()) throw LayerFormatError(fmt::format("'{}.weight' must be an integer", id));
      entry.weight = it->get<int>();
    }
    if (auto it = body.find("params"); it != body.end()) {
      if (!it->is_object()) throw LayerFormatError(fmt::format("'{}.params' must be an object", id));
      for (const auto& [name, value] : it->items()) entry.params.emplace(name, value);
    }
    layer.detectors.emplace(id, std::move(entry));
  }
  return layer;
}

json to_json(const ConfigLayer& layer) {
  json dets = json::object();
  for (const auto& [id, e] : layer.detectors) {
    json body = json::object();
    if (e.enabled) body["enabled"] = *e.enabled;
    if (e.weight) body["weight"] = *e.weight;
    if (!e.params.empty()) {
      json params = json::object();
      for (const auto& [name, value] : e.params) params[name] = value;
      body["params"] = std::move(params);
    }
    dets[id] = std::move(body);
  }
  return {{"kind", layer.kind}, {"scope", layer.scope}, {"detectors", std::move(dets)}};
}

json to_json(const LayerIssue& issue) {
  return {{"detector", issue.detector}, {"key", issue.key}, {"rule", issue.rule}, {"detail", issue.detail}};
}

namespace {

const DetectorInfo* find_info(std::span<const DetectorInfo> registry, std::string_view id) {
  for (const auto& d : registry) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

void check_entry(const std::string& id, const LayerEntry& entry, std::span<const DetectorInfo> registry,
                 std::vector<LayerIssue>& out) {
  const DetectorInfo* info = find_info(registry, id);
  if (!info) {
    out.push_back({id, "", "unknown-detector", fmt::format("no detector with id '{}'", id)});
    return;
  }
  if (entry.weight && (*entry.weight < kMinWeight || *entry.weight > kMaxWeight)) {
    out.push_back({id, "weight", "weight-out-of-range",
                   fmt::format("weight {} outside [{}, {}]", *entry.weight, kMinWeight, kMaxWeight)});
  }
  for (const auto& [name, value] : entry.params) {
    const ParamSpec* spec = info->param(name);
    if (!spec) {
      out.push_back({id, name, "unknown-param", fmt::format("detector '{}' has no parameter '{}'", id, name)});
    } else if (!param_from_json(value, spec->type)) {
      out.push_back({id, name, "param-type",
                     fmt::format("expected {} for '{}', got {}", to_string(spec->type), name, value.dump())});
    }
  }
}

}  // namespace

std::vector<LayerIssue> validate_layer(const ConfigLayer& layer, std::span<const DetectorInfo> registry,
                                       const KindList& kinds) {
  std::vector<LayerIssue> out;
  if (std::find(kinds.begin(), kinds.end(), layer.kind) == kinds.end()) {
    out.push_back({"", "kind", "unknown-kind", fmt::format("unknown layer kind '{}'", layer.kind)});
  }
  if (!valid_name(layer.scope)) {
    out.push_back({"", "scope", "invalid-scope", fmt::format("invalid scope name '{}'", layer.scope)});
  }
  for (const auto& [id, entry] : layer.detectors) check_entry(id, entry, registry, out);
  return out;
}

std::vector<LayerIssue> validate_layer(const json& doc, std::span<const DetectorInfo> registry,
                                       const KindList& kinds) {
  std::vector<LayerIssue> out;
  if (!doc.is_object()) return {{"", "", "layer-shape", "layer document must be an object"}};
  for (const auto& [key, value] : doc.items()) {
    if (key != "kind" && key != "scope" && key != "detectors") {
      out.push_back({"", key, "unknown-key", fmt::format("unexpected top-level key '{}'", key)});
    }
  }
  // Re-check shape entry by entry so that every problem is reported, not only the first.
  json cleaned = doc;
  if (auto it = doc.find("detectors"); it != doc.end()) {
    if (!it->is_object()) return {{"", "detectors", "layer-shape", "'detectors' must be an object"}};
    json kept = json::object();
    for (const auto& [id, body] : it->items()) {
      if (!body.is_object()) {
        out.push_back({id, "", "layer-shape", "detector settings must be an object"});
        continue;
      }
      json entry = json::object();
      for (const auto& [key, value] : body.items()) {
        if (key == "enabled" && !value.is_boolean()) {
          out.push_back({id, key, "param-type", "'enabled' must be a boolean"});
        } else if (key == "weight" && !value.is_number_integer()) {
          out.push_back({id, key, "param-type", "'weight' must be an integer"});
        } else if (key == "params" && !value.is_object()) {
          out.push_back({id, key, "layer-shape", "'params' must be an object"});
        } else if (key != "enabled" && key != "weight" && key != "params") {
          out.push_back({id, key, "unknown-key", fmt::format("unexpected setting '{}'", key)});
        } else {
          entry[key] = value;
        }
      }
      kept[id] = std::move(entry);
    }
    cleaned["detectors"] = std::move(kept);
  }
  for (const char* key : {"kind", "scope"}) {
    if (auto it = doc.find(key); it == doc.end() || !it->is_string()) {
      out.push_back({"", key, "layer-shape", fmt::format("'{}' must be a string", key)});
      cleaned[key] = "";
    }
  }
  auto semantic = validate_layer(layer_from_json(cleaned), registry, kinds);
  for (auto& issue : semantic) {
    bool duplicate = std::any_of(out.begin(), out.end(), [&](const LayerIssue& o) {
      return o.detector == issue.detector && o.key == issue.key;
    });
    if (!duplicate) out.push_back(std::move(issue));
  }
  return out;
}

const EffectiveSetting& EffectiveConfig::at(std::string_view id) const {
  auto it = detectors.find(std::string(id));
  if (it == detectors.end()) throw UnknownDetectorId(fmt::format("no detector with id '{}'", id));
  return it->second;
}

json to_json(const EffectiveConfig& config) {
  json dets = json::object();
  for (const auto& [id, s] : config.detectors) {
    json params = json::object();
    for (const auto& [name, value] : s.params.values()) params[name] = param_to_json(value);
    dets[id] = {{"enabled", s.enabled}, {"weight", s.weight}, {"params", std::move(params)}};
  }
  return {{"detectors", std::move(dets)}};
}

std::string EffectiveConfig::fingerprint() const { return content_hash(to_json(*this).dump()); }

EffectiveConfig defaults(std::span<const DetectorInfo> registry) {
  EffectiveConfig out;
  for (const auto& d : registry) {
    out.detectors.emplace(d.id, EffectiveSetting{d.enabled_by_default, default_params(d), d.default_weight});
  }
  return out;
}

EffectiveConfig resolve(const std::vector<ConfigLayer>& layers, std::span<const DetectorInfo> registry,
                        const KindList& kinds) {
  std::vector<std::pair<std::size_t, const ConfigLayer*>> ordered;
  for (const auto& layer : layers) {
    auto it = std::find(kinds.begin(), kinds.end(), layer.kind);
    if (it == kinds.end()) throw UnknownLayerKind(fmt::format("unknown layer kind '{}'", layer.kind));
    auto rank = static_cast<std::size_t>(it - kinds.begin());
    for (const auto& [r, l] : ordered) {
      if (r == rank) throw DuplicateLayerKind(fmt::format("more than one '{}' layer in the stack", layer.kind));
    }
    ordered.emplace_back(rank, &layer);
  }
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  EffectiveConfig out = defaults(registry);
  for (const auto& [rank, layer] : ordered) {
    for (const auto& [id, entry] : layer->detectors) {
      const DetectorInfo* info = find_info(registry, id);
      if (!info) throw UnknownDetectorId(fmt::format("no detector with id '{}'", id));
      EffectiveSetting& s = out.detectors.at(id);
      if (entry.enabled) s.enabled = *entry.enabled;
      if (entry.weight) {
        if (*entry.weight < kMinWeight || *entry.weight > kMaxWeight) {
          throw WeightOutOfRange(fmt::format("{}: weight {} outside [{}, {}]", id, *entry.weight, kMinWeight,
                                             kMaxWeight));
        }
        s.weight = *entry.weight;
      }
      for (const auto& [name, raw] : entry.params) {
        const ParamSpec* spec = info->param(name);
        if (!spec) throw ParamTypeMismatch(fmt::format("{}: unknown parameter '{}'", id, name));
        auto value = param_from_json(raw, spec->type);
        if (!value) {
          throw ParamTypeMismatch(
              fmt::format("{}: parameter '{}' expects {}, got {}", id, name, to_string(spec->type), raw.dump()));
        }
        s.params.set(name, std::move(*value));
      }
    }
  }
  return out;
}

ConfigLayer as_layer(const EffectiveConfig& config, std::string kind, std::string scope) {
  ConfigLayer layer{std::move(kind), std::move(scope), {}};
  for (const auto& [id, s] : config.detectors) {
    LayerEntry e;
    e.enabled = s.enabled;
    e.weight = s.weight;
    for (const auto& [name, value] : s.params.values()) e.params.emplace(name, param_to_json(value));
    layer.detectors.emplace(id, std::move(e));
  }
  return layer;
}

ConfigStore::ConfigStore(fs::path root, KindList kinds) : root_(std::move(root)), kinds_(std::move(kinds)) {}

fs::path ConfigStore::path_for(std::string_view kind, std::string_view scope) const {
  if (!valid_name(kind) || !valid_name(scope)) {
    throw ConfigError(fmt::format("invalid layer name '{}/{}'", kind, scope));
  }
  return root_ / std::string(kind) / (std::string(scope) + ".json");
}

namespace {

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::optional<json> ConfigStore::load_document(std::string_view kind, std::string_view scope) const {
  auto text = read_file(path_for(kind, scope));
  if (!text) return std::nullopt;
  try {
    return json::parse(*text);
  } catch (const json::parse_error& e) {
    throw LayerFormatError(fmt::format("{}: {}", path_for(kind, scope).string(), e.what()));
  }
}

std::optional<ConfigLayer> ConfigStore::load(std::string_view kind, std::string_view scope) const {
  auto doc = load_document(kind, scope);
  if (!doc) return std::nullopt;
  ConfigLayer layer = layer_from_json(*doc);
  layer.kind = std::string(kind);
  layer.scope = std::string(scope);
  return layer;
}

void ConfigStore::write(std::string_view kind, std::string_view scope, const json& doc) const {
  fs::path target = path_for(kind, scope);
  fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError(fmt::format("cannot write {}", tmp.string()));
    out << doc.dump(2) << '\n';
    if (!out.flush()) throw ConfigError(fmt::format("cannot write {}", tmp.string()));
  }
  fs::rename(tmp, target);
}

Context ConfigStore::context_for(std::string_view project, const Context& overrides) const {
  Context ctx;
  ctx["organisation"] = "default";
  if (!project.empty() && valid_name(project)) ctx["project"] = std::string(project);
  if (auto text = read_file(root_ / "contexts.json")) {
    json doc = json::parse(*text, nullptr, false);
    if (doc.is_object()) {
      auto teams = doc.find("teams");
      if (teams != doc.end() && teams->is_object()) {
        auto team = teams->find(std::string(project));
        if (team != teams->end() && team->is_string()) ctx["team"] = team->get<std::string>();
      }
    }
  }
  for (const auto& [kind, scope] : overrides) ctx[kind] = scope;
  return ctx;
}

std::vector<ConfigLayer> ConfigStore::stack_for(const Context& context) const {
  std::vector<ConfigLayer> out;
  for (const auto& kind : kinds_) {
    auto it = context.find(kind);
    if (it == context.end() || !valid_name(it->second)) continue;
    if (auto layer = load(kind, it->second)) out.push_back(std::move(*layer));
  }
  return out;
}

EffectiveConfig ConfigStore::effective_for(const Context& context, std::span<const DetectorInfo> registry) const {
  return resolve(stack_for(context), registry, kinds_);
}

std::string ConfigStore::fingerprint() const {
  std::string acc;
  std::error_code ec;
  if (fs::exists(root_, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root_, ec)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      acc += fs::relative(f, root_).generic_string();
      acc += '\0';
      acc += read_file(f).value_or("");
      acc += '\0';
    }
  }
  return content_hash(acc);
}

}  // namespace itelint
