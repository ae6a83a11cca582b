//
// Copyright 2026 The rankrobust Authors
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
//


// Drives the installed command line tool end to end.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

#ifndef RANKROBUST_CLI_PATH
#define RANKROBUST_CLI_PATH ""
#endif

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    if (std::string(RANKROBUST_CLI_PATH).empty()) {
      GTEST_SKIP() << "command line tool not built";
    }
    const auto* info = testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           ("rankrobust_cli_" + std::string(info->name()) + "_" +
            std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    Write("docs.tsv",
          "d1\tthe quick brown fox jumps\n"
          "d2\tquick quick fox\n"
          "d3\tlazy dog sleeps all day long\n"
          "d4\tthe brown dog and the brown fox\n"
          "d5\tfox\n");
    Write("queries.tsv",
          "q1\tquick fox\tiid\n"
          "q2\tbrown dog\tood\n"
          "q3\tlazy sleeping dogs\tiid\n");
    Write("qrels.txt",
          "q1 0 d2 1\nq1 0 d1 1\nq2 0 d4 2\nq2 0 d3 1\nq3 0 d3 1\n");
  }

  void TearDown() override {
    if (!dir_.empty()) fs::remove_all(dir_);
  }

  void Write(const std::string& name, const std::string& contents) {
    std::ofstream(dir_ / name) << contents;
  }

  std::string Read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Runs the tool inside the scratch directory and returns its exit code.
  int Run(const std::string& args) const {
    const std::string cmd = "cd '" + dir_.string() + "' && '" +
                            RANKROBUST_CLI_PATH + "' " + args +
                            " >stdout.txt 2>stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
};

TEST_F(CliTest, IndexSearchEvaluate) {
  ASSERT_EQ(Run("index --corpus docs.tsv --out index.json"), 0);
  ASSERT_EQ(Run("search --index index.json --queries queries.tsv --k1 1.2 "
                "--b 0.75 --out run.txt"),
            0);
  // The fixture has known rankings: q1 -> d2 d1 ..., q2 -> d4 d1 d3,
  // q3 -> d3 only ("sleeping" and "dogs" do not match without stemming).
  ASSERT_EQ(Run("evaluate --run run.txt --qrels qrels.txt --metric map,p@1 "
                "--out report.json"),
            0);
  const auto reports = json::parse(Read("report.json"));
  ASSERT_EQ(reports.size(), 2u);
  EXPECT_EQ(reports[0]["metric"], "map");
  // q1: AP 1; q2: d4 at 1, d3 at 3 -> (1 + 2/3) / 2; q3: 1.
  EXPECT_NEAR(reports[0]["aggregate"].get<double>(),
              (1.0 + (1.0 + 2.0 / 3.0) / 2.0 + 1.0) / 3.0, 1e-12);
  EXPECT_EQ(reports[1]["metric"], "p@1");
  EXPECT_TRUE(reports[0]["extras"].contains("vnap"));
  EXPECT_TRUE(reports[0]["extras"].contains("gmap"));
  EXPECT_TRUE(reports[0]["extras"].contains("pct_no"));
  EXPECT_EQ(reports[0]["extras"]["config.seed"], 42.0);
  EXPECT_EQ(reports[0]["config"]["run"], "run.txt");
}

TEST_F(CliTest, DropRateOfReportAgainstItself) {
  ASSERT_EQ(Run("index --corpus docs.tsv --out index.json"), 0);
  ASSERT_EQ(Run("search --index index.json --queries queries.tsv --out run.txt"),
            0);
  ASSERT_EQ(Run("evaluate --run run.txt --qrels qrels.txt --out report.json"),
            0);
  ASSERT_EQ(Run("droprate --treated report.json --baseline report.json "
                "--out dr.json"),
            0);
  const auto dr = json::parse(Read("dr.json"));
  EXPECT_EQ(dr["drop_rate"].get<double>(), 0.0);
  EXPECT_EQ(dr["p_value"].get<double>(), 1.0);
}

TEST_F(CliTest, GroupFilterAndCompare) {
  ASSERT_EQ(Run("index --corpus docs.tsv --out index.json"), 0);
  ASSERT_EQ(Run("search --index index.json --queries queries.tsv --group ood "
                "--out ood.txt"),
            0);
  EXPECT_EQ(Read("ood.txt").find("q1 "), std::string::npos);
  EXPECT_NE(Read("ood.txt").find("q2 "), std::string::npos);
  ASSERT_EQ(Run("search --index index.json --queries queries.tsv --out a.txt"),
            0);
  ASSERT_EQ(Run("compare --run-a a.txt --run-b a.txt --out cmp.json"), 0);
  const auto cmp = json::parse(Read("cmp.json"));
  EXPECT_EQ(cmp["tc"].get<double>(), 0.0);
  EXPECT_EQ(cmp["kt"].get<double>(), 0.0);
}

TEST_F(CliTest, AttackIsDeterministicAndReplayable) {
  ASSERT_EQ(Run("--seed 7 attack --queries queries.tsv --mode char2 "
                "--out m1.tsv --attacked-out a1.tsv"),
            0);
  ASSERT_EQ(Run("attack --queries queries.tsv --mode char2 --out m2.tsv "
                "--attacked-out a2.tsv --seed 7 --threads 3"),
            0);
  EXPECT_EQ(Read("m1.tsv"), Read("m2.tsv"));
  EXPECT_EQ(Read("a1.tsv"), Read("a2.tsv"));
  EXPECT_NE(Read("a1.tsv"), Read("queries.tsv"));
  ASSERT_EQ(Run("index --corpus docs.tsv --out index.json"), 0);
  ASSERT_EQ(Run("attack --queries queries.tsv --mode word --vocab-from-index "
                "index.json --vocab-size 5 --out w.tsv"),
            0);
}

TEST_F(CliTest, Tune) {
  ASSERT_EQ(Run("index --corpus docs.tsv --out index.json"), 0);
  ASSERT_EQ(Run("tune --index index.json --queries queries.tsv --qrels "
                "qrels.txt --grid 'k1=0.5,1.2;b=0.25:0.75:0.25' --trace "
                "--out tune.json"),
            0);
  const auto tune = json::parse(Read("tune.json"));
  EXPECT_EQ(tune["grid_points"], 6);
  EXPECT_EQ(tune["trace"].size(), 6u);
  ASSERT_EQ(Run("tune --index index.json --queries queries.tsv --qrels "
                "qrels.txt --model ql --objective ndcg@3 --out ql.json"),
            0);
  EXPECT_EQ(json::parse(Read("ql.json"))["grid_points"], 200);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Run("--help"), 0);
  EXPECT_EQ(Run(""), 1);
  EXPECT_EQ(Run("frobnicate"), 1);
  EXPECT_EQ(Run("search --index missing.json"), 1);
  EXPECT_EQ(Run("evaluate --run run.txt --qrels qrels.txt --metric p@0"), 1);
  EXPECT_EQ(Run("index --corpus missing.tsv --out x.json"), 2);
  Write("bad_run.txt", "q1 Q0 d1 1 0.5\n");
  EXPECT_EQ(Run("evaluate --run bad_run.txt --qrels qrels.txt"), 2);
  EXPECT_NE(Read("stderr.txt").find("bad_run.txt:1"), std::string::npos);
}

}  // namespace
