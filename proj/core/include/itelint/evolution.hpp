// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef ITELINT_EVOLUTION_HPP_
#define ITELINT_EVOLUTION_HPP_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "itelint/model.hpp"

namespace itelint {

/// Events within this distance of issue creation are creational.
inline constexpr Duration kCreationalTolerance = std::chrono::seconds(2);

bool is_creational(Timestamp when, Timestamp created);

/// Raw field name to canonical code. Names are matched exactly first,
/// then ignoring case and surrounding whitespace.
class FieldCodebook {
 public:
  static const FieldCodebook& builtin();
  static FieldCodebook from_json(const nlohmann::json& doc);

  FieldCode unify(std::string_view raw) const;
  void add_synonym(std::string_view raw, FieldCode code);

  /// Every (raw name, code) association in the book.
  const std::map<std::string, FieldCode>& names() const { return exact_; }

 private:
  std::map<std::string, FieldCode> exact_;
  std::map<std::string, FieldCode> folded_;
};

FieldCode unify_field_name(std::string_view raw);

struct Timeline {
  std::vector<ChangeEvent> creational;
  std::vector<ChangeEvent> post_creational;
};

/// Splits the changelog by the creational flag. Snapshot fields set at
/// creation without a recorded creational event get a synthetic one.
Timeline timeline(const IssueRecord& issue);

/// Field values and custom values at one instant.
struct FieldState {
  FieldMap fields;
  std::map<std::string, std::string> custom;

  friend bool operator==(const FieldState&, const FieldState&) = default;
};

/// Applies one event's `to` side.
void apply_event(FieldState& state, const ChangeEvent& event);

/// Values at creation: replayed from creational events where present,
/// otherwise derived by undoing later events from the final value.
FieldState creation_snapshot(const IssueRecord& issue);

class BeforeCreation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct IssueState {
  FieldState values;
  std::vector<Comment> comments;
  std::optional<Timestamp> resolved;
};

/// Throws BeforeCreation when t precedes issue.created.
IssueState state_at(const IssueRecord& issue, Timestamp t);

/// The record as it looked at `t`: changelog and comments cut at t, field
/// values from state_at. Links and project are kept.
IssueRecord truncate(const IssueRecord& issue, Timestamp t);

enum class OwnershipClass { CRA, CRa, crA, cRa, Cra, cRA, CrA, NonOwner };

std::string_view to_string(OwnershipClass c);

struct OwnershipRole {
  bool creator = false;
  bool reporter = false;
  bool assignee = false;
  /// Set when the event has no author; the role is then Non-Owner.
  bool unknown_author = false;

  OwnershipClass cls() const;
  bool owner() const { return cls() != OwnershipClass::NonOwner; }
};

/// Roles held by the event author against the creator, and against the
/// reporter and assignee as they stood just before the event.
OwnershipRole classify_ownership(const ChangeEvent& event, const IssueRecord& issue);

/// classify_ownership for every post-creational event, in timeline order.
std::vector<OwnershipRole> classify_all(const IssueRecord& issue);

}  // namespace itelint

#endif  // ITELINT_EVOLUTION_HPP_
