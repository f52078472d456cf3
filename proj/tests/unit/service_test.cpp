// Copyright 2026 The itelint Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "builders.hpp"
#include "generator.hpp"
#include "itelint/detectors.hpp"
#include "itelint/report.hpp"
#include "itelint/service.hpp"

namespace itelint {
namespace {

using nlohmann::json;
using testing::day;
using testing::IssueBuilder;
namespace fs = std::filesystem;

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("itelint-service-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(dir_ / "contexts.json") << R"({"teams": {"CORE": "core"}})";
    std::vector<IssueRecord> issues = {
        IssueBuilder("CORE-1", day(0), "CORE").fixed_bug().resolved(day(3)).change(day(3), FieldCode::Status, "Open",
                                                                                  "Closed"),
        IssueBuilder("CORE-2", day(1), "CORE").type("Bug").status("Open").summary("crash on start"),
        IssueBuilder("WEB-1", day(2), "WEB").type("Task").status("Open").description("one two three"),
    };
    service_ = std::make_unique<Service>(Corpus(std::move(issues)), dir_);
  }
  void TearDown() override {
    service_.reset();
    fs::remove_all(dir_);
  }

  Response call(std::string method, std::string path, std::string body = "",
                std::map<std::string, std::string> query = {}, std::map<std::string, std::string> headers = {}) {
    return service_->handle({std::move(method), std::move(path), std::move(query), std::move(headers), std::move(body)});
  }
  static json body(const Response& r) { return json::parse(r.body); }

  fs::path dir_;
  std::unique_ptr<Service> service_;
};

TEST_F(ServiceTest, ListsDetectorsWithParams) {
  const Response r = call("GET", "/detectors");
  ASSERT_EQ(r.status, 200);
  const json j = body(r);
  ASSERT_EQ(j.size(), registry().size());
  EXPECT_EQ(j, detectors_json());
  bool saw_params = false;
  for (const auto& d : j) saw_params |= d.contains("params") && !d["params"].empty();
  EXPECT_TRUE(saw_params);
}

TEST_F(ServiceTest, Catalogue) {
  EXPECT_EQ(body(call("GET", "/catalogue")).size(), 40u);
  EXPECT_EQ(body(call("GET", "/catalogue", "", {{"smell_id", "S1.9"}})).size(), 2u);
  EXPECT_EQ(body(call("GET", "/catalogue/BP13"))["id"], "BP13");
  EXPECT_EQ(call("GET", "/catalogue/BP99").status, 404);
}

TEST_F(ServiceTest, PutRejectsOutOfRangeWeight) {
  const Response r = call("PUT", "/config/team/core", R"({"detectors": {"reopen": {"weight": 13}}})");
  ASSERT_EQ(r.status, 422);
  const json j = body(r);
  ASSERT_EQ(j["issues"].size(), 1u);
  EXPECT_EQ(j["issues"][0]["rule"], "weight-out-of-range");
  EXPECT_EQ(call("GET", "/config/team/core").status, 404);
}

TEST_F(ServiceTest, PutThenGetRoundTrips) {
  const Response put = call("PUT", "/config/team/core", R"({"detectors": {"activity_gap": {"enabled": false}}})");
  ASSERT_EQ(put.status, 200);
  const Response get = call("GET", "/config/team/core");
  ASSERT_EQ(get.status, 200);
  EXPECT_EQ(body(get)["detectors"]["activity_gap"]["enabled"], false);
  EXPECT_EQ(get.headers.at("ETag"), put.headers.at("ETag"));
}

TEST_F(ServiceTest, StaleVersionTokenConflicts) {
  const Response first = call("PUT", "/config/team/core", R"({"detectors": {"reopen": {"weight": 2}}})");
  const std::string etag = first.headers.at("ETag");
  EXPECT_EQ(call("PUT", "/config/team/core", R"({"detectors": {"reopen": {"weight": 3}}})", {}, {{"if-match", etag}})
                .status,
            200);
  EXPECT_EQ(call("PUT", "/config/team/core", R"({"detectors": {"reopen": {"weight": 4}}})", {}, {{"if-match", etag}})
                .status,
            409);
  EXPECT_EQ(body(call("GET", "/config/team/core"))["detectors"]["reopen"]["weight"], 3);
  EXPECT_EQ(call("PUT", "/config/team/web", "{}", {}, {{"if-match", "*"}}).status, 409);
}

TEST_F(ServiceTest, IssueHealthHonoursTeamLayer) {
  json all = json::object();
  for (const auto& info : registry()) all[info.id] = {{"enabled", false}};
  ASSERT_EQ(call("PUT", "/config/team/core", json{{"detectors", all}}.dump()).status, 200);
  const json core = body(call("GET", "/issues/CORE-1/health"));
  for (const auto& row : core["rows"]) EXPECT_EQ(row["status"], "disabled") << row["detector_id"];
  const json web = body(call("GET", "/issues/WEB-1/health"));
  bool any_enabled = false;
  for (const auto& row : web["rows"]) any_enabled |= row["status"] != "disabled";
  EXPECT_TRUE(any_enabled);
}

TEST_F(ServiceTest, IssueHealthAsOf) {
  const json before = body(call("GET", "/issues/CORE-1/health", "", {{"as_of", "2024-01-02"}}));
  for (const auto& row : before["rows"]) {
    if (row["detector_id"] == "missing_assignee") EXPECT_EQ(row["status"], "not_applicable");
  }
  EXPECT_EQ(call("GET", "/issues/WEB-1/health", "", {{"as_of", "2024-01-01"}}).status, 404);
  EXPECT_EQ(call("GET", "/issues/NOPE-1/health").status, 404);
  EXPECT_EQ(call("GET", "/issues/CORE-1/health", "", {{"as_of", "soon"}}).status, 400);
}

TEST_F(ServiceTest, RunsMatchDirectComputation) {
  const Response posted = call("POST", "/runs", R"({"filters": {"project": "CORE"}})");
  ASSERT_TRUE(posted.status == 200 || posted.status == 202);
  const std::string id = body(posted)["id"];
  service_->wait_idle();
  const Response projects = call("GET", "/runs/" + id + "/projects");
  ASSERT_EQ(projects.status, 200);
  const RunResult direct = run_all(service_->corpus(), store_provider(service_->store()), {std::nullopt, "CORE"});
  EXPECT_EQ(body(projects), rates_json(direct));
  EXPECT_EQ(body(call("GET", "/runs/" + id + "/score")), to_json(health_score(direct)));

  // Same inputs hit the cache.
  const Response again = call("POST", "/runs", R"({"filters": {"project": "CORE"}})");
  EXPECT_EQ(again.status, 200);
  EXPECT_EQ(body(again)["id"], id);
  EXPECT_EQ(call("GET", "/runs/run-999/score").status, 404);
  EXPECT_EQ(call("POST", "/runs", R"({"as_of": 5})").status, 400);
}

TEST_F(ServiceTest, ConfigWriteInvalidatesRunCache) {
  const std::string first = body(call("POST", "/runs", "{}"))["id"];
  service_->wait_idle();
  ASSERT_EQ(call("PUT", "/config/organisation/default", R"({"detectors": {"no_comments": {"enabled": false}}})").status,
            200);
  const std::string second = body(call("POST", "/runs", "{}"))["id"];
  EXPECT_NE(first, second);
  service_->wait_idle();
  const json rates = body(call("GET", "/runs/" + second + "/projects"));
  for (const auto& d : rates) {
    if (d["detector_id"] == "no_comments") EXPECT_EQ(d["enabled"], false);
  }
}

TEST_F(ServiceTest, Trends) {
  const Response r = call("GET", "/trends", "", {{"from", "2024-01-01"}, {"to", "2024-01-15"}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(body(r).size(), 3u);
  const Response daily =
      call("GET", "/trends", "", {{"from", "2024-01-01"}, {"to", "2024-01-05"}, {"step", "1d"}, {"project", "WEB"}});
  EXPECT_EQ(body(daily).size(), 5u);
  EXPECT_EQ(call("GET", "/trends").status, 400);
  EXPECT_EQ(call("GET", "/trends", "", {{"from", "2020-01-01"}, {"to", "2024-01-01"}, {"step", "1d"}}).status, 400);
}

TEST_F(ServiceTest, UnknownRoutes) {
  EXPECT_EQ(call("GET", "/").status, 404);
  EXPECT_EQ(call("DELETE", "/detectors").status, 404);
  EXPECT_EQ(call("GET", "/config/galaxy/x").status, 404);
  EXPECT_EQ(call("GET", "/config/team/..").status, 400);
}

TEST(Port, EnvironmentOverridesFlag) {
  ::unsetenv("ITELINT_PORT");
  EXPECT_EQ(resolve_port(8080), 8080);
  ::setenv("ITELINT_PORT", "9191", 1);
  EXPECT_EQ(resolve_port(8080), 9191);
  ::setenv("ITELINT_PORT", "notaport", 1);
  EXPECT_EQ(resolve_port(8080), 8080);
  ::unsetenv("ITELINT_PORT");
}

}  // namespace
}  // namespace itelint
