// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_CATALOGUE_HPP_
#define ITELINT_CATALOGUE_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace itelint {

enum class ItsScope { Issue, IssuePair, Project, Sprint, ITS };

std::string_view to_string(ItsScope scope);
std::optional<ItsScope> parse_its_scope(std::string_view name);

/// Whether a dimension carries text or one of the two placeholders.
enum class ValueKind { Content, None, Unknown };

ValueKind kind_of(std::string_view value);

struct StakeholderNote {
  std::string group;
  std::string text;
};

/// Either a list of per-group notes or a bare placeholder.
struct Stakeholders {
  std::vector<StakeholderNote> notes;
  std::string placeholder;

  ValueKind kind() const { return notes.empty() ? kind_of(placeholder) : ValueKind::Content; }
};

struct BestPractice {
  std::string id;
  std::string group;

  std::string name;
  std::vector<std::string> sources;

  std::string objective;
  std::string motivation;

  std::string process;
  std::string its;

  Stakeholders benefits;
  Stakeholders costs;
  ItsScope its_scope = ItsScope::Issue;
  std::string its_scope_text;
  /// Empty means all types.
  std::vector<std::string> issue_types;
  std::string issue_types_text;
  std::string inclusion_factors;
  std::string exclusion_factors;

  std::string smells;
  std::string consequences;
  std::string causes;
  std::string detection;
  std::optional<std::string> detector_id;

  /// The document the entry was loaded from.
  nlohmann::json document;

  bool all_types() const { return issue_types.empty(); }
};

class SchemaViolation : public std::runtime_error {
 public:
  SchemaViolation(std::string entry, std::string dimension, const std::string& what)
      : std::runtime_error(what), entry_(std::move(entry)), dimension_(std::move(dimension)) {}

  const std::string& entry() const { return entry_; }
  const std::string& dimension() const { return dimension_; }

 private:
  std::string entry_;
  std::string dimension_;
};

struct Smell {
  std::string id;
  std::string group;
  std::string text;
  std::vector<std::string> best_practices;
};

/// Throws SchemaViolation. Detector ids are checked against the registry.
BestPractice parse_practice(const nlohmann::json& doc);

struct Rejected {
  std::size_t index = 0;
  std::string entry;
  std::string dimension;
  std::string message;
};

struct Partition {
  std::vector<BestPractice> accepted;
  std::vector<Rejected> rejected;
};

/// Validates each document independently.
Partition partition_documents(const std::vector<nlohmann::json>& documents);

class Catalogue {
 public:
  /// The shipped 40 entries and smell table.
  static const Catalogue& builtin();

  /// Strict: the first invalid entry throws SchemaViolation, as does a smell
  /// link to an unknown practice or a duplicate id.
  static Catalogue load(const std::vector<nlohmann::json>& practices, const nlohmann::json& smells);

  const std::vector<BestPractice>& practices() const { return practices_; }
  const std::vector<Smell>& smells() const { return smells_; }
  const BestPractice* find(std::string_view id) const;
  const Smell* smell(std::string_view id) const;

  struct Filter {
    std::optional<std::string> issue_type;
    std::optional<ItsScope> its_scope;
    std::optional<bool> has_detector;
    std::optional<std::string> smell_id;
  };

  /// Conjunction of the set filters, in id order.
  std::vector<const BestPractice*> query(const Filter& filter) const;

 private:
  std::vector<BestPractice> practices_;
  std::vector<Smell> smells_;
};

nlohmann::json to_json(const BestPractice& bp);
nlohmann::json summary_json(const BestPractice& bp);
nlohmann::json to_json(const Smell& smell);

/// Two-column text rendering of one entry.
std::string render_table(const BestPractice& bp, std::size_t width = 100);

}  // namespace itelint

#endif  // ITELINT_CATALOGUE_HPP_
