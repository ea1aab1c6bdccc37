// Copyright 2026 The snowflake-embed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "snowflake/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace snowflake::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string data(const std::string& name) { return std::string(SNOWFLAKE_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out;
  json report;
};

Run run(std::vector<std::string> args) {
  const fs::path report_path =
      fs::temp_directory_path() / ("snowflake_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + ".json");
  fs::remove(report_path);
  const bool wants_report = args.size() > 1;
  if (wants_report) {
    args.push_back("--json");
    args.push_back(report_path.string());
  }
  std::vector<const char*> argv{"snowflake"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r{run_cli(static_cast<int>(argv.size()), argv.data(), out, err), out.str() + err.str(), json()};
  if (wants_report && fs::exists(report_path)) {
    std::ifstream in(report_path);
    r.report = json::parse(in);
    fs::remove(report_path);
  }
  return r;
}

TEST(CliValidateTest, ExitCodes) {
  const auto ok = run({"validate", data("collinear3.csv")});
  EXPECT_EQ(ok.code, kPass);
  EXPECT_EQ(ok.report["outcome"], "pass");
  EXPECT_EQ(ok.report["command"], "validate");
  EXPECT_EQ(ok.report["inputs"][0]["sha256"].get<std::string>().size(), 64u);

  const auto bad = run({"validate", data("asymmetric.csv")});
  EXPECT_EQ(bad.code, kPropertyFails);
  EXPECT_EQ(bad.report["outcome"], "fail");
  EXPECT_EQ(bad.report["payload"]["violation"]["code"], "NotSymmetric");

  EXPECT_EQ(run({"validate", data("missing.json")}).code, kInputError);
}

TEST(CliNegtypeTest, ClawWitness) {
  const auto r = run({"negtype", data("claw.json")});
  EXPECT_EQ(r.code, kPropertyFails);
  const auto& p = r.report["payload"];
  EXPECT_FALSE(p["is_negative_type"].get<bool>());
  EXPECT_NEAR(p["witness_form"].get<double>(), 0.5, 1e-12);
  EXPECT_NEAR(p["min_eigenvalue"]["value"].get<double>(), -0.25, 1e-13);
}

TEST(CliNegtypeTest, SnowflakeStrict) {
  EXPECT_EQ(run({"negtype", data("collinear3.csv"), "--alpha", "0.5", "--strict"}).code, kPass);
  EXPECT_EQ(run({"negtype", data("collinear3.csv"), "--strict"}).code, kPropertyFails);
  EXPECT_EQ(run({"negtype", data("square.json")}).code, kPass);
  EXPECT_EQ(run({"negtype", data("collinear3.csv"), "--alpha", "2"}).code, kUsageError);
}

TEST(CliEmbedTest, RanksAndOutput) {
  const auto half = run({"embed", data("collinear3.csv"), "--alpha", "0.5"});
  EXPECT_EQ(half.code, kPass);
  EXPECT_EQ(half.report["payload"]["rank"], 2);

  const auto one = run({"embed", data("collinear3.csv"), "--alpha", "1"});
  EXPECT_EQ(one.code, kPass);
  EXPECT_EQ(one.report["payload"]["rank"], 1);

  EXPECT_EQ(run({"embed", data("claw.json")}).code, kPropertyFails);

  const fs::path out = fs::temp_directory_path() / "snowflake_cli_test_coords.json";
  EXPECT_EQ(run({"embed", data("two_points.json"), "--out", out.string()}).code, kPass);
  std::ifstream in(out);
  const json coords = json::parse(in);
  EXPECT_EQ(coords["rank"], 1);
  const double x0 = coords["coordinates"][0][0], x1 = coords["coordinates"][1][0];
  EXPECT_NEAR(std::abs(x0 - x1), 5.0, 1e-12);
  fs::remove(out);
}

TEST(CliSchoenbergTest, Grid) {
  const auto r = run({"schoenberg", "--alpha", "0.5", "--t-grid", "0.1,1,10"});
  EXPECT_EQ(r.code, kPass);
  EXPECT_EQ(r.report["payload"]["identity"].size(), 3u);
  EXPECT_NEAR(r.report["payload"]["constant"]["closed_form"].get<double>(), 0.5641895835477563,
              1e-15);
  EXPECT_EQ(run({"schoenberg", "--alpha", "1.5"}).code, kUsageError);
  EXPECT_EQ(run({"schoenberg", "--alpha", "0.5", "--t-grid", "1,x"}).code, kUsageError);
}

TEST(CliQuotientEmbedTest, Pipelines) {
  const auto r = run({"quotient-embed", data("c2_reflection.json"), data("reps_1_2.json")});
  EXPECT_EQ(r.code, kPass);
  const auto& p = r.report["payload"];
  EXPECT_EQ(p["group_order"], 2);
  EXPECT_EQ(p["lifted_points"], 4);
  EXPECT_NEAR(p["report"][0]["achieved"].get<double>(), 1.0, 1e-12);

  const auto fixed = run({"quotient-embed", data("c2_reflection.json"), data("reps_fixed.json")});
  EXPECT_EQ(fixed.code, kPropertyFails);
  EXPECT_EQ(fixed.report["payload"]["error"]["code"], "NonFreeOrbit");

  EXPECT_EQ(run({"quotient-embed", data("c4_rotation.json"), data("reps_e2.json"), "--alpha",
                 "0.75"})
                .code,
            kPass);
  EXPECT_EQ(run({"quotient-embed", data("c2_reflection.json"), data("reps_1_2.json"),
                 "--alpha", "1"})
                .code,
            kUsageError);
}

TEST(CliQuotientEmbedTest, TrivialGroupAgreesWithEmbed) {
  const auto q = run({"quotient-embed", data("trivial_e2.json"), data("reps_e2.json")});
  const auto e = run({"embed", data("reps_e2_metric.json"), "--alpha", "0.5"});
  ASSERT_EQ(q.code, kPass);
  ASSERT_EQ(e.code, kPass);
  for (const auto& row : q.report["payload"]["report"]) {
    EXPECT_NEAR(row["achieved"].get<double>(), row["target"].get<double>(), 1e-9);
  }
  EXPECT_EQ(e.report["payload"]["rank"], 2);
}

TEST(CliUsageTest, ParseErrors) {
  EXPECT_EQ(run({"nosuchcommand"}).code, kUsageError);
  EXPECT_EQ(run({"validate"}).code, kUsageError);
  EXPECT_EQ(run({"--help"}).code, kPass);
  EXPECT_EQ(run({}).code, kUsageError);
}

}  // namespace
}  // namespace snowflake::cli
