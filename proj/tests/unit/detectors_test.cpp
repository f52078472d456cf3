// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "builders.hpp"
#include "generator.hpp"
#include "itelint/config.hpp"
#include "itelint/detectors.hpp"
#include "itelint/ingest.hpp"

namespace itelint {
namespace {

using testing::day;
using testing::IssueBuilder;
using testing::who;

const DetectContext kCtx{day(400)};

Params params_of(const std::string& id) { return default_params(detector_info(id)); }

Evaluation eval(const std::string& id, const IssueRecord& issue, const Params& p, const DetectContext& ctx = kCtx) {
  return evaluate(id, issue, p, ctx);
}
Evaluation eval(const std::string& id, const IssueRecord& issue) { return eval(id, issue, params_of(id)); }

bool violates(const Evaluation& e) { return e.applicable && !e.violations.empty(); }
bool clean(const Evaluation& e) { return e.applicable && e.violations.empty(); }

IssueBuilder closed_bug(const std::string& key = "B-1") {
  return std::move(IssueBuilder(key).fixed_bug().resolved(day(20)).change(day(20), FieldCode::Status, "Open", "Closed"));
}

TEST(MissingField, Examples) {
  EXPECT_TRUE(violates(eval("missing_assignee", closed_bug())));
  EXPECT_TRUE(violates(eval("missing_assignee", closed_bug().assignee("unassigned@gcc.gnu.org"))));
  EXPECT_TRUE(clean(eval("missing_assignee", closed_bug().assignee("alice"))));
  EXPECT_FALSE(eval("missing_assignee", IssueBuilder("B-2").type("Bug").status("Open")).applicable);
  EXPECT_FALSE(eval("missing_assignee", closed_bug().type("Story")).applicable);
  EXPECT_FALSE(eval("missing_assignee", closed_bug().resolution("Won't Fix")).applicable);
}

TEST(MissingField, PlaceholdersAndCustomSeverity) {
  EXPECT_TRUE(violates(eval("missing_priority", closed_bug().priority("Not Evaluated"))));
  EXPECT_TRUE(clean(eval("missing_priority", closed_bug().priority("Major"))));
  EXPECT_TRUE(violates(eval("missing_severity", closed_bug().custom("Severity", "N/A"))));
  EXPECT_TRUE(clean(eval("missing_severity", closed_bug().custom("Severity", "major"))));
  EXPECT_TRUE(violates(eval("missing_environment", closed_bug())));
  EXPECT_TRUE(violates(eval("missing_components", closed_bug())));
}

TEST(Reassignments, Examples) {
  const Timestamp t = day(3);
  auto base = [] { return closed_bug().assignee("c").change(day(0), FieldCode::Assignee, std::nullopt, "a"); };
  EXPECT_TRUE(clean(eval("reassignments", base().assignee("b").change(t, FieldCode::Assignee, "a", "b"))));
  EXPECT_TRUE(violates(eval("reassignments", base()
                                                 .change(t, FieldCode::Assignee, "a", "b")
                                                 .change(t + minutes(10), FieldCode::Assignee, "b", "c"))));
  EXPECT_TRUE(clean(eval("reassignments", base()
                                              .change(t, FieldCode::Assignee, "a", "b")
                                              .change(t + minutes(3), FieldCode::Assignee, "b", "c"))));
}

TEST(Reassignments, OracleCountsPostCreationalEvents) {
  // Gaps of 10 minutes: nothing collapses, so the verdict is the raw count test.
  for (int n = 0; n < 6; ++n) {
    IssueBuilder b = closed_bug();
    for (int i = 0; i < n; ++i) {
      b.change(day(1) + minutes(10 * i), FieldCode::Assignee, "p" + std::to_string(i), "p" + std::to_string(i + 1));
    }
    EXPECT_EQ(violates(eval("reassignments", b)), n > 1) << n;
  }
}

TEST(CollapseRuns, GroupsCloseInstants) {
  const std::vector<Timestamp> times = {day(0), day(0) + minutes(4), day(0) + minutes(8), day(0) + minutes(20)};
  const auto runs = collapse_runs(times, minutes(5));
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(runs[1], (std::pair<std::size_t, std::size_t>{3, 3}));
  EXPECT_TRUE(collapse_runs({}, minutes(5)).empty());
  EXPECT_EQ(collapse_runs({day(0), day(0) + minutes(5)}, minutes(5)).size(), 2u);
}

TEST(TeamAssignment, Examples) {
  EXPECT_TRUE(violates(eval("team_assignment", IssueBuilder("B-1").type("Bug").assignee("bst", "Backlog-Sharding Team"))));
  EXPECT_TRUE(clean(eval("team_assignment", IssueBuilder("B-1").type("Bug").assignee("alice"))));
  EXPECT_FALSE(eval("team_assignment", IssueBuilder("B-1").type("Bug")).applicable);
}

TEST(NonassigneeResolution, Examples) {
  auto resolved_by = [](const std::string& who_resolved) {
    return closed_bug()
        .assignee("alice")
        .change(day(20), FieldCode::Resolution, std::nullopt, "Fixed", who(who_resolved));
  };
  EXPECT_TRUE(violates(eval("nonassignee_resolution", resolved_by("bob"))));
  EXPECT_TRUE(clean(eval("nonassignee_resolution", resolved_by("alice"))));
  EXPECT_FALSE(eval("nonassignee_resolution", IssueBuilder("B-1").type("Bug").status("Open").assignee("alice")).applicable);
}

TEST(NonassigneeResolution, UsesAssigneeAtResolution) {
  const IssueRecord issue = closed_bug()
                                .assignee("carol")
                                .change(day(5), FieldCode::Assignee, "bob", "alice")
                                .change(day(20), FieldCode::Resolution, std::nullopt, "Fixed", who("alice"))
                                .change(day(30), FieldCode::Assignee, "alice", "carol");
  EXPECT_TRUE(clean(eval("nonassignee_resolution", issue)));
}

TEST(SlowSevereResolution, Examples) {
  auto severe = [](const std::string& prio, double days_open) {
    return IssueBuilder("B-1").fixed_bug().priority(prio).resolved(day(days_open));
  };
  EXPECT_TRUE(violates(eval("slow_severe_resolution", severe("Blocker", 10))));
  EXPECT_TRUE(clean(eval("slow_severe_resolution", severe("Blocker", 3))));
  EXPECT_FALSE(eval("slow_severe_resolution", severe("Minor", 30)).applicable);
}

TEST(ActivityGap, Examples) {
  const IssueRecord gap = IssueBuilder("B-1")
                              .fixed_bug()
                              .resolved(day(201))
                              .comment(day(50), "still there")
                              .change(day(200), FieldCode::Priority, "Minor", "Major");
  const Evaluation e = eval("activity_gap", gap);
  ASSERT_TRUE(violates(e));
  EXPECT_NE(e.violations[0].explanation.find("150"), std::string::npos) << e.violations[0].explanation;

  IssueBuilder steady("B-2");
  steady.fixed_bug().resolved(day(300));
  for (int d = 30; d < 300; d += 30) steady.comment(day(d), "ping");
  EXPECT_TRUE(clean(eval("activity_gap", steady)));

  const IssueRecord after = IssueBuilder("B-3").fixed_bug().resolved(day(10)).comment(day(160), "late note");
  EXPECT_TRUE(clean(eval("activity_gap", after, params_of("activity_gap"), DetectContext{day(170)})));
}

TEST(ActivityGap, OpenIssueMeasuresUpToNow) {
  const IssueRecord open = IssueBuilder("B-1").type("Bug").status("Open");
  EXPECT_TRUE(clean(eval("activity_gap", open, params_of("activity_gap"), DetectContext{day(80)})));
  EXPECT_TRUE(violates(eval("activity_gap", open, params_of("activity_gap"), DetectContext{day(100)})));
}

TEST(Reopen, Examples) {
  auto reopened = [](Duration after, const std::string& to) {
    return IssueBuilder("B-1")
        .type("Bug")
        .status(to)
        .change(day(5), FieldCode::Status, "Open", "Closed")
        .change(day(5) + after, FieldCode::Status, "Closed", to);
  };
  EXPECT_TRUE(violates(eval("reopen", reopened(days(2), "In Progress"))));
  EXPECT_TRUE(clean(eval("reopen", reopened(minutes(2), "Open"))));
  EXPECT_TRUE(clean(eval("reopen", IssueBuilder("B-1").type("Bug").status("Open").change(day(2), FieldCode::Status,
                                                                                       "Open", "In Progress"))));
}

TEST(NoComments, Examples) {
  EXPECT_TRUE(violates(eval("no_comments", closed_bug())));
  EXPECT_TRUE(clean(eval("no_comments", closed_bug().comment(day(3), "done"))));
  EXPECT_FALSE(eval("no_comments", IssueBuilder("B-1").type("Bug").status("Open")).applicable);
}

TEST(TextLength, Examples) {
  auto desc = [](std::size_t words) {
    std::string s;
    for (std::size_t i = 0; i < words; ++i) s += "word ";
    return IssueBuilder("T-1").type("Task").description(s);
  };
  EXPECT_TRUE(violates(eval("sufficient_description", desc(6))));
  EXPECT_TRUE(clean(eval("sufficient_description", desc(10))));
  EXPECT_TRUE(violates(eval("sufficient_description", IssueBuilder("T-1").type("Task"))));
  EXPECT_TRUE(violates(eval("succinct_description", desc(300))));
  EXPECT_TRUE(clean(eval("succinct_description", desc(250))));

  EXPECT_TRUE(clean(eval("summary_length", IssueBuilder("T-1").summary(std::string(55, 'x')))));
  EXPECT_TRUE(violates(eval("summary_length", IssueBuilder("T-1").summary(std::string(20, 'x')))));
  EXPECT_TRUE(violates(eval("summary_length", IssueBuilder("T-1").summary(std::string(71, 'x')))));
}

IssueBuilder status_path(const std::vector<std::string>& path) {
  IssueBuilder b("S-1");
  b.type("Bug").status(path.back());
  for (std::size_t i = 1; i < path.size(); ++i) b.change(day(static_cast<double>(i)), FieldCode::Status, path[i - 1], path[i]);
  return b;
}

TEST(Cycles, Examples) {
  EXPECT_TRUE(violates(eval("status_ping_pong", status_path({"Open", "In Progress", "Open", "Closed"}))));
  EXPECT_TRUE(clean(eval("status_ping_pong", status_path({"Open", "In Progress", "Closed"}))));

  Params allowed = params_of("status_ping_pong");
  allowed.set("allowed_cycles", std::vector<std::string>{"QA|Dev"});
  EXPECT_TRUE(clean(eval("status_ping_pong", status_path({"QA", "Dev", "QA"}), allowed)));
  EXPECT_TRUE(clean(eval("status_ping_pong", status_path({"Dev", "QA", "Dev"}), allowed)));
  EXPECT_TRUE(violates(eval("status_ping_pong", status_path({"QA", "Dev", "QA"}))));
}

TEST(Cycles, AnyRevisitCounts) {
  // Oracle: seen-set scan over the value sequence.
  const std::vector<std::vector<std::string>> paths = {
      {"A", "B", "C", "A"}, {"A", "B", "C", "D"}, {"A", "B", "C", "B"}, {"A", "B"}, {"A", "B", "A", "B"}};
  for (const auto& path : paths) {
    std::set<std::string> seen;
    bool revisit = false;
    for (const auto& v : path) revisit |= !seen.insert(v).second;
    EXPECT_EQ(violates(eval("status_ping_pong", status_path(path))), revisit);
  }
}

TEST(Cycles, AssigneeByPerson) {
  const IssueRecord issue = IssueBuilder("S-1")
                                .type("Bug")
                                .assignee("alice")
                                .change(day(0), FieldCode::Assignee, std::nullopt, "alice")
                                .change(day(1), FieldCode::Assignee, "alice", "bob")
                                .change(day(2), FieldCode::Assignee, "bob", "alice");
  EXPECT_TRUE(violates(eval("assignee_ping_pong", issue)));
}

ValueUniverse universe_of(const std::vector<IssueRecord>& issues) {
  std::vector<const IssueRecord*> ptrs;
  for (const auto& i : issues) ptrs.push_back(&i);
  return build_universe(ptrs);
}

TEST(InconsistentProperties, Examples) {
  const std::vector<IssueRecord> repo = {IssueBuilder("U-1").status("Closed").priority("Blocker"),
                                         IssueBuilder("U-2").status("Open").priority("Minor")};
  const ValueUniverse u = universe_of(repo);
  const DetectContext ctx{day(400), &TypeMapper::builtin(), &u};
  const Params p = params_of("inconsistent_properties");

  const IssueRecord flagged = IssueBuilder("I-1").status("Open").comment(day(1), "setting status to Closed as discussed");
  EXPECT_TRUE(violates(eval("inconsistent_properties", flagged, p, ctx)));
  const IssueRecord thanks = IssueBuilder("I-2").status("Open").comment(day(1), "thanks!");
  EXPECT_TRUE(clean(eval("inconsistent_properties", thanks, p, ctx)));
  const IssueRecord desc = IssueBuilder("I-3").description("raise priority to Blocker");
  EXPECT_TRUE(violates(eval("inconsistent_properties", desc, p, ctx)));
  const IssueRecord enclosed = IssueBuilder("I-4").description("status of the enclosed patch");
  EXPECT_TRUE(clean(eval("inconsistent_properties", enclosed, p, ctx)));
}

EffectiveConfig only(const std::string& id) {
  EffectiveConfig cfg = defaults(registry());
  for (auto& [det, s] : cfg.detectors) s.enabled = det == id;
  return cfg;
}

Corpus one_missing_assignee() {
  return Corpus({closed_bug("DEMO-1").priority("Major").comment(day(3), "fixed")});
}

TEST(RunAll, SingleDetectorExample) {
  const RunResult r = run_all(one_missing_assignee(), only("missing_assignee"));
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].detector_id, "missing_assignee");
  const Cell& c = r.cells.at("missing_assignee").at("P");
  EXPECT_EQ(c.applicable, 1u);
  EXPECT_EQ(c.violating_issues, 1u);
  EXPECT_EQ(r.cells.at("no_comments").at("P").disabled, 1u);
}

TEST(RunAll, DisabledByTeamLayer) {
  ConfigLayer team;
  team.kind = "team";
  team.scope = "core";
  team.detectors["missing_assignee"].enabled = false;
  const EffectiveConfig cfg = resolve({as_layer(only("missing_assignee"), "organisation"), team}, registry());
  const RunResult r = run_all(one_missing_assignee(), cfg);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.cells.at("missing_assignee").at("P").applicable, 0u);
  EXPECT_EQ(r.cells.at("missing_assignee").at("P").disabled, 1u);
}

TEST(RunAll, AsOfBeforeClosing) {
  const RunResult r = run_all(one_missing_assignee(), only("missing_assignee"), {day(10), ""});
  EXPECT_TRUE(r.violations.empty());
  EXPECT_EQ(r.cells.at("missing_assignee").at("P").applicable, 0u);
  EXPECT_EQ(r.cells.at("missing_assignee").at("P").not_applicable, 1u);
  EXPECT_EQ(r.now, day(10));
}

TEST(RunAll, DeterministicAndProjectFilter) {
  testing::Generator g(77);
  const Corpus corpus = testing::export_corpus(g.corpus(3, 30));
  const EffectiveConfig cfg = defaults(registry());
  const RunResult a = run_all(corpus, cfg);
  EXPECT_EQ(a, run_all(corpus, cfg));
  const RunResult p0 = run_all(corpus, cfg, {std::nullopt, "P0"});
  EXPECT_EQ(p0.issues, 30u);
  for (const auto& v : p0.violations) EXPECT_EQ(v.project, "P0");
  std::size_t in_a = 0;
  for (const auto& v : a.violations) in_a += v.project == "P0";
  EXPECT_EQ(in_a, p0.violations.size());
}

TEST(RunAll, CellsAccountForEveryIssue) {
  testing::Generator g(78);
  const Corpus corpus = testing::export_corpus(g.corpus(2, 40));
  const RunResult r = run_all(corpus, defaults(registry()));
  for (const auto& [id, projects] : r.cells) {
    for (const auto& [project, c] : projects) {
      EXPECT_EQ(c.applicable + c.not_applicable + c.disabled, 40u) << id;
      EXPECT_LE(c.violating_issues, c.applicable) << id;
      EXPECT_LE(c.violating_issues, c.violations) << id;
    }
  }
}

TEST(Registry, LookupAndDefaults) {
  EXPECT_THROW(detector_info("nope"), UnknownDetectorId);
  EXPECT_EQ(detector_info("activity_gap").bp_ids, (std::vector<std::string>{"BP13", "BP14"}));
  EXPECT_EQ(params_of("activity_gap").get_duration("max_gap"), days(90));
  EXPECT_EQ(params_of("reassignments").get_duration("collapse"), minutes(5));
  EXPECT_EQ(registry().size(), 18u);
}

}  // namespace
}  // namespace itelint
