// Copyright 2026 The widthapx Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace widthapx::cli {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("widthapx_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  // K4 with a valid expression; returns {graph, cw}.
  std::pair<std::string, std::string> k4() {
    const std::string g = path("k4.gr");
    const std::string c = path("k4.cw");
    EXPECT_EQ(run({"gen", "clique", "--n", "4", "--seed", "1", "--out-graph", g, "--out-cw", c}).code,
              kExitOk);
    return {g, c};
  }

  fs::path dir_;
};

const char* kK4 = "p graph 4 6\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\n";
// Joins labels 1 and 2 twice, so it is not a valid certificate.
const char* kK4Cw =
    "cwd 2 7\n1 i 1 1\n2 i 2 2\n3 u 1 2\n4 j 3 1 2\n5 i 2 3\n6 u 4 5\n7 j 6 1 2\nroot 7\n";

TEST_F(CliTest, SolveMaxcutReportsTrueObjective) {
  const auto [g, c] = k4();
  const CliRun r = run({"solve", "maxcut", "--graph", g, "--cw", c, "--epsilon", "0.1", "--seed", "1",
                     "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["objective"]["true"], 4);
  EXPECT_EQ(j["problem"], "maxcut");
  EXPECT_TRUE(j.contains("wall_time_ms"));
  EXPECT_TRUE(j["lemma_violations"].empty());
}

TEST_F(CliTest, CertificateMismatchIsAnInputError) {
  const std::string g = write("k4.gr", kK4);
  const std::string c = write("bad.cw", kK4Cw);
  EXPECT_EQ(run({"solve", "maxcut", "--graph", g, "--cw", c, "--epsilon", "0.1"}).code, kExitInput);
}

TEST_F(CliTest, SolveMmoTriangleDeterministic) {
  const std::string g = write("tri.gr", "p graph 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  const std::string t = write("tri.td", "s td 1 3 3\nb 1 1 2 3\n");
  const CliRun r = run({"solve", "mmo", "--graph", g, "--td", t, "--epsilon", "0.1", "--mode",
                     "deterministic", "--json", "--omit-timing"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["objective"]["true"], 1);
  EXPECT_FALSE(j.contains("wall_time_ms"));
}

TEST_F(CliTest, UnsupportedCombinationIsAUsageError) {
  const auto [g, c] = k4();
  const CliRun r = run({"solve", "mmo", "--graph", g, "--cw", c, "--epsilon", "0.1"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_FALSE(r.err.empty());
  const std::string t = write("k4.td", "s td 1 4 4\nb 1 1 2 3 4\n");
  EXPECT_EQ(run({"solve", "maxcut", "--graph", g, "--td", t, "--epsilon", "0.1"}).code, kExitUsage);
  EXPECT_EQ(run({"solve", "maxcut", "--graph", g, "--epsilon", "0.1"}).code, kExitUsage);
}

TEST_F(CliTest, InfeasibleExitCode) {
  const std::string g = write("k3.gr", "p graph 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  const std::string t = write("k3.td", "s td 1 3 3\nb 1 1 2 3\n");
  const CliRun r = run({"solve", "eqcolor", "--k", "2", "--graph", g, "--td", t, "--epsilon", "0.1",
                     "--mode", "exact", "--json"});
  EXPECT_EQ(r.code, kExitInfeasible);
  EXPECT_EQ(nlohmann::json::parse(r.out)["feasible"], false);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(run({"solve", "maxcut", "--graph", path("missing.gr"), "--cw", path("missing.cw"),
                 "--epsilon", "0.1"})
                .code,
            kExitInput);
  const std::string bad = write("loop.gr", "p graph 2 1\ne 1 1\n");
  EXPECT_EQ(run({"oracle", "maxcut", "--graph", bad}).code, kExitInput);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"solve", "nosuch", "--graph", "x", "--cw", "y", "--epsilon", "0.1"}).code,
            kExitUsage);
  const auto [g, c] = k4();
  EXPECT_EQ(run({"solve", "maxcut", "--graph", g, "--cw", c, "--epsilon", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, OracleOutputAndGuard) {
  const std::string c5 = write("c5.gr", "p graph 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 1 5\n");
  const CliRun r = run({"oracle", "maxcut", "--graph", c5});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["optimum"], 4);
  std::string big = "p graph 17 0\n";
  EXPECT_EQ(run({"oracle", "maxcut", "--graph", write("big.gr", big)}).code, kExitUsage);
}

TEST_F(CliTest, AatCommands) {
  const std::string t = write("t.at", "at 3\n1 leaf 1\n2 leaf 2\n3 add 1 2\nroot 3\n");
  const CliRun e = run({"aat", "eval", "--tree", t, "--delta", "1", "--seed", "2"});
  ASSERT_EQ(e.code, kExitOk) << e.err;
  const auto j = nlohmann::json::parse(e.out);
  EXPECT_EQ(j["root"]["exact"], 3);
  const double z = j["root"]["approx"];
  EXPECT_TRUE(z == 2.0 || z == 4.0);
  const CliRun s = run({"aat", "simulate", "--shape", "balanced", "--size", "8", "--delta", "0.1",
                     "--trials", "3", "--seed", "1"});
  ASSERT_EQ(s.code, kExitOk);
  std::istringstream lines(s.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.rfind("trial\tnodes", 0), 0u);
  int rows = 0;
  for (std::string line; std::getline(lines, line);) rows += !line.empty();
  EXPECT_EQ(rows, 3);
}

TEST_F(CliTest, GenThenSolveEveryProblem) {
  const std::string g = path("g.gr");
  const std::string c = path("g.cw");
  const std::string t = path("g.td");
  ASSERT_EQ(run({"gen", "gnp", "--n", "9", "--seed", "4", "--edge-prob", "0.4", "--max-capacity",
                 "3", "--max-weight", "3", "--out-graph", g, "--out-cw", c, "--out-td", t})
                .code,
            kExitOk);
  for (const char* p : {"maxcut", "eds", "eqcolor", "bdd", "cds"}) {
    const CliRun r = run({"solve", p, "--graph", g, "--cw", c, "--epsilon", "0.2", "--mode", "exact",
                       "--k", "3", "--max-degree", "2", "--tsv"});
    EXPECT_TRUE(r.code == kExitOk || r.code == kExitInfeasible) << p << ": " << r.err;
  }
  for (const char* p : {"eqcolor", "bdd", "cds", "cvc", "mmo"}) {
    const CliRun r = run({"solve", p, "--graph", g, "--td", t, "--epsilon", "0.2", "--mode",
                       "deterministic", "--k", "3", "--max-degree", "2", "--json"});
    EXPECT_TRUE(r.code == kExitOk || r.code == kExitInfeasible) << p << ": " << r.err;
  }
  EXPECT_EQ(run({"gen", "cograph", "--n", "5", "--out-graph", g, "--out-td", t}).code, kExitUsage);
}

TEST_F(CliTest, BenchTable) {
  const CliRun r = run({"bench", "--family", "cograph", "--problem", "maxcut", "--sizes", "12,16",
                     "--trials", "2", "--seed", "3", "--omit-timing"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header.find("wall_ms"), std::string::npos);
  int rows = 0;
  for (std::string line; std::getline(lines, line);) rows += !line.empty();
  EXPECT_EQ(rows, 2 * 2 * 2);
  EXPECT_EQ(run({"bench", "--family", "cograph", "--problem", "maxcut", "--sizes", "12",
                 "--trials", "2", "--seed", "3", "--omit-timing"})
                .out.substr(0, 200),
            run({"bench", "--family", "cograph", "--problem", "maxcut", "--sizes", "12",
                 "--trials", "2", "--seed", "3", "--omit-timing", "--threads", "3"})
                .out.substr(0, 200));
}

}  // namespace
}  // namespace widthapx::cli
