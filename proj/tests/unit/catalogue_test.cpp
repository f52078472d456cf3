// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <set>

#include "itelint/catalogue.hpp"
#include "itelint/detectors.hpp"
#include "itelint/embedded_data.hpp"

namespace itelint {
namespace {

using nlohmann::json;

json shipped(const std::string& id) { return json::parse(*embedded::find("catalogue/" + id + ".json")); }

std::set<std::string> ids(const std::vector<const BestPractice*>& v) {
  std::set<std::string> out;
  for (const auto* bp : v) out.insert(bp->id);
  return out;
}

TEST(Catalogue, ShipsFortyEntries) {
  const Catalogue& c = Catalogue::builtin();
  EXPECT_EQ(c.practices().size(), 40u);
  EXPECT_EQ(c.practices().front().id, "BP01");
  EXPECT_EQ(c.practices().back().id, "BP40");
  EXPECT_EQ(c.find("BP13")->name, "Avoid Zombie Bugs");
  EXPECT_EQ(c.find("BP99"), nullptr);
}

TEST(Catalogue, MissingViolationSectionIsRejected) {
  json doc = shipped("BP12");
  doc.erase("violation");
  try {
    parse_practice(doc);
    FAIL() << "expected SchemaViolation";
  } catch (const SchemaViolation& e) {
    EXPECT_EQ(e.entry(), "BP12");
    EXPECT_EQ(e.dimension(), "violation");
  }
}

TEST(Catalogue, EmptyDimensionMustUsePlaceholder) {
  json doc = shipped("BP12");
  doc["context"]["inclusion_factors"] = "  ";
  EXPECT_THROW(parse_practice(doc), SchemaViolation);
}

TEST(Catalogue, UnknownDetectorIdIsRejected) {
  json doc = shipped("BP01");
  doc["violation"]["algorithmic_detection"] = {{"text", "x"}, {"detector_id", "no_such_detector"}};
  EXPECT_THROW(parse_practice(doc), SchemaViolation);
}

TEST(Catalogue, FixtureWithDetectorCrossLinks) {
  json doc = shipped("BP01");
  doc["id"] = "BP90";
  doc["context"]["issue_types"] = {{"codes", {"BugReport"}}, {"text", "Bug"}};
  doc["violation"]["algorithmic_detection"] = {{"text", "gap check"}, {"detector_id", "activity_gap"}};
  const BestPractice bp = parse_practice(doc);
  ASSERT_TRUE(bp.detector_id);
  EXPECT_EQ(detector_info(*bp.detector_id).id, "activity_gap");
  EXPECT_EQ(bp.issue_types, (std::vector<std::string>{"BugReport"}));

  const Catalogue c = Catalogue::load({doc}, json{{"smells", json::array({{{"id", "S9"}, {"group", "g"}, {"smell", "x"}, {"best_practices", {"BP90"}}}})}});
  EXPECT_EQ(ids(c.query({.smell_id = "S9"})), (std::set<std::string>{"BP90"}));
}

TEST(Catalogue, SmellLinkToUnknownPracticeFails) {
  const json smells{{"smells", json::array({{{"id", "S9"}, {"group", "g"}, {"smell", "x"}, {"best_practices", {"BP77"}}}})}};
  EXPECT_THROW(Catalogue::load({shipped("BP01")}, smells), SchemaViolation);
}

TEST(Catalogue, Queries) {
  const Catalogue& c = Catalogue::builtin();
  EXPECT_EQ(ids(c.query({.smell_id = "S1.9"})), (std::set<std::string>{"BP13", "BP14"}));
  EXPECT_TRUE(ids(c.query({.issue_type = "Bug", .its_scope = ItsScope::Issue})).count("BP01"));
  EXPECT_FALSE(ids(c.query({.issue_type = "Story"})).count("BP01"));
  EXPECT_TRUE(c.query({.smell_id = "S404"}).empty());

  // Oracle: practices whose detector_id is set, counted directly.
  std::set<std::string> wired;
  for (const auto& bp : c.practices()) {
    if (bp.detector_id) wired.insert(bp.id);
  }
  EXPECT_EQ(ids(c.query({.has_detector = true})), wired);
  EXPECT_EQ(wired.size() + c.query({.has_detector = false}).size(), 40u);
}

TEST(Catalogue, DetectorsAreReferenced) {
  std::set<std::string> referenced;
  for (const auto& bp : Catalogue::builtin().practices()) {
    if (bp.detector_id) referenced.insert(*bp.detector_id);
  }
  for (const auto& info : registry()) {
    if (info.bp_ids.empty()) {
      EXPECT_FALSE(referenced.count(info.id)) << info.id;
    } else {
      EXPECT_TRUE(referenced.count(info.id)) << info.id;
      for (const auto& bp : info.bp_ids) EXPECT_EQ(Catalogue::builtin().find(bp)->detector_id, info.id);
    }
  }
}

TEST(Catalogue, UnknownAndNoneStayDistinct) {
  const BestPractice* bp = Catalogue::builtin().find("BP12");
  EXPECT_EQ(bp->benefits.kind(), ValueKind::Unknown);
  EXPECT_EQ(kind_of(bp->inclusion_factors), ValueKind::None);
  const json j = to_json(*bp);
  EXPECT_NE(j.dump().find("Unknown"), std::string::npos);
}

TEST(Catalogue, PartitionSplitsValidAndInvalid) {
  std::vector<json> docs;
  for (int i = 1; i <= 6; ++i) docs.push_back(shipped(i < 10 ? "BP0" + std::to_string(i) : "BP" + std::to_string(i)));
  docs[1].erase("meta");
  docs[4]["context"]["its_scope"] = "Galaxy";
  const Partition p = partition_documents(docs);
  EXPECT_EQ(p.accepted.size() + p.rejected.size(), docs.size());
  ASSERT_EQ(p.rejected.size(), 2u);
  EXPECT_EQ(p.rejected[0].index, 1u);
  EXPECT_EQ(p.rejected[1].index, 4u);
}

TEST(Catalogue, RenderedTableShowsEntry) {
  const std::string out = render_table(*Catalogue::builtin().find("BP13"));
  EXPECT_NE(out.find("Avoid Zombie Bugs"), std::string::npos);
  EXPECT_NE(out.find("Foster a meaningful backlog"), std::string::npos);
}

}  // namespace
}  // namespace itelint
