// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "itelint/typemap.hpp"

namespace itelint {
namespace {

std::vector<std::string> uses(const std::string& code, std::size_t n, std::size_t total) {
  std::vector<std::string> out(n, code);
  out.resize(total, "Filler");
  return out;
}

TEST(TypeMap, Examples) {
  EXPECT_EQ(map_issue_type("Defect"), (TypeCode{Activity::Maintenance, "BugReport"}));
  EXPECT_EQ(map_issue_type("User Story"), (TypeCode{Activity::Requirements, "Story"}));
  EXPECT_EQ(map_issue_type("Fug"), (TypeCode{Activity::Other, "Other"}));
  EXPECT_EQ(map_issue_type("Something Else"), (TypeCode{Activity::Other, "Other"}));
}

TEST(TypeMap, LookupIgnoresCaseAndSpacing) {
  EXPECT_EQ(map_issue_type("user   story"), map_issue_type("User Story"));
  EXPECT_EQ(map_issue_type("BUG"), map_issue_type("Bug"));
  EXPECT_EQ(map_issue_type("Question").activity, Activity::UserSupport);
}

TEST(TypeMap, OverridesAndCodes) {
  TypeMapper m = TypeMapper::builtin();
  m.add("Spike", Activity::Development, "Task");
  EXPECT_EQ(m.map("spike"), (TypeCode{Activity::Development, "Task"}));
  EXPECT_EQ(m.activity_of_code("BugReport"), Activity::Maintenance);
  EXPECT_FALSE(m.activity_of_code("Nope"));
  EXPECT_EQ(TypeMapper::builtin().codes().front().code, "Epic");
}

TEST(UsageSet, Thresholds) {
  EXPECT_EQ(usage_set(uses("Task", 5, 100)).count("Task"), 1u);
  EXPECT_EQ(usage_set(uses("Task", 4, 30)).count("Task"), 1u);
  EXPECT_EQ(usage_set(uses("Task", 3, 100)).count("Task"), 0u);
  EXPECT_EQ(usage_set(uses("Task", 3, 30)).count("Task"), 1u);
  EXPECT_EQ(usage_set(uses("Task", 2, 30)).count("Task"), 0u);
  // 50 issues is no longer small: 10% alone is not enough.
  EXPECT_EQ(usage_set(uses("Task", 4, 50)).count("Task"), 0u);
  EXPECT_EQ(usage_set(uses("Task", 4, 49)).count("Task"), 0u);
  EXPECT_EQ(usage_set(uses("Task", 5, 49)).count("Task"), 1u);
  EXPECT_EQ(usage_set(uses("Task", 1, 10)).count("Task"), 1u);
  EXPECT_TRUE(usage_set(std::vector<std::string>{}).empty());
}

TEST(Cooccurrence, IdenticalSets) {
  const auto r = cooccurrence_rank({{"A", "B"}, {"A", "B"}});
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].count, 2u);
  EXPECT_DOUBLE_EQ(r[0].percent, 100.0);
}

TEST(Cooccurrence, HandEnumeratedExample) {
  const auto r = cooccurrence_rank({{"A"}, {"A"}, {"B"}});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].codes, (std::set<std::string>{"A"}));
  EXPECT_EQ(r[0].count, 2u);
  EXPECT_NEAR(r[0].percent, 66.7, 0.05);
  EXPECT_NEAR(r[0].cumulative_percent, 66.7, 0.05);
  EXPECT_EQ(r[1].codes, (std::set<std::string>{"B"}));
  EXPECT_NEAR(r[1].percent, 33.3, 0.05);
  EXPECT_NEAR(r[1].cumulative_percent, 100.0, 1e-9);
}

TEST(Cooccurrence, CountsSumToProjects) {
  std::mt19937 rng(4);
  const std::vector<std::string> pool = {"Bug", "Task", "Story", "Epic"};
  for (int round = 0; round < 50; ++round) {
    std::vector<std::set<std::string>> sets(1 + rng() % 40);
    for (auto& s : sets) {
      for (const auto& c : pool) {
        if (rng() % 2) s.insert(c);
      }
    }
    const auto r = cooccurrence_rank(sets);
    std::size_t total = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      total += r[i].count;
      if (i > 0) EXPECT_GE(r[i - 1].count, r[i].count);
    }
    EXPECT_EQ(total, sets.size());
    EXPECT_NEAR(r.back().cumulative_percent, 100.0, 1e-9);
  }
}

}  // namespace
}  // namespace itelint
