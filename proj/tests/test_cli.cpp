// Copyright 2026 The morphdec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"

namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("morphdec_cli_") + info->name() + "_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the CLI with stdout and stderr captured to files; returns the exit code.
  int run(const std::string& args) {
    std::string cmd = std::string("\"") + MORPHDEC_CLI + "\" " + args + " >\"" + (dir_ / "stdout").string() +
                      "\" 2>\"" + (dir_ / "stderr").string() + "\"";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string out() const { return slurp(dir_ / "stdout"); }
  std::string err() const { return slurp(dir_ / "stderr"); }
  std::string data(const std::string& name) const { return "\"" + (morphdec::testing::data_dir() / name).string() + "\""; }
  std::string tmp(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }

  fs::path dir_;
};

TEST_F(Cli, CompileWritesIndex) {
  ASSERT_EQ(run("compile --lexicon " + data("lexicon.tsv") + " --inventory " + data("inventory.tsv") + " --out " +
                tmp("idx")),
            0)
      << err();
  for (const char* f : {"lexicon.tsv", "inventory.tsv", "phonemes.tsv", "trie.dot", "index.info"}) {
    EXPECT_TRUE(fs::exists(dir_ / "idx" / f)) << f;
  }
  EXPECT_NE(slurp(dir_ / "idx" / "trie.dot").find("digraph"), std::string::npos);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("analyze --obs nowhere.txt"), 2);
  EXPECT_EQ(run("evaluate --gold " + data("corpus.tsv") + " --hyp " + data("corpus.tsv") + " --unit word"), 2);
}

TEST_F(Cli, BadDataExitsThreeWithoutPartialOutput) {
  std::ofstream(dir_ / "bad.tsv") << "surface\torth\n";
  EXPECT_EQ(run("compile --lexicon " + tmp("bad.tsv") + " --inventory " + data("inventory.tsv") + " --phonemes " +
                data("phonemes.tsv") + " --out " + tmp("idx")),
            3);
  EXPECT_FALSE(err().empty());
  EXPECT_FALSE(fs::exists(dir_ / "idx" / "lexicon.tsv"));
}

TEST_F(Cli, EvaluateIdenticalFilesIsPerfect) {
  ASSERT_EQ(run("evaluate --unit morpheme --gold " + data("corpus.tsv") + " --hyp " + data("corpus.tsv")), 0) << err();
  EXPECT_NE(out().find("100.00%"), std::string::npos) << out();
  ASSERT_EQ(run("evaluate --unit morpheme --json --gold " + data("corpus.tsv") + " --hyp " + data("corpus.tsv")), 0);
  EXPECT_NE(out().find("\"delete\": 0"), std::string::npos) << out();
}

TEST_F(Cli, SimulateDecodeAnalyzeChain) {
  std::string idx = tmp("idx");
  ASSERT_EQ(run("compile --lexicon " + data("lexicon.tsv") + " --inventory " + data("inventory.tsv") + " --out " + idx),
            0);
  ASSERT_EQ(run("simulate --corpus " + data("corpus.tsv") + " --index " + idx + " --rates 0,0,0 --seed 3 --out " +
                tmp("obs.txt")),
            0)
      << err();
  ASSERT_EQ(run("decode --index " + idx + " --obs " + tmp("obs.txt") + " --out " + tmp("lat.txt")), 0) << err();
  EXPECT_NE(slurp(dir_ / "lat.txt").find("# eonjeol 1"), std::string::npos);
  ASSERT_EQ(run("analyze --index " + idx + " --matrices " + data("") + " --obs " + tmp("obs.txt") + " --out " +
                tmp("ana.txt")),
            0)
      << err();
  ASSERT_EQ(run("evaluate --unit diphone --index " + idx + " --gold " + data("corpus.tsv") + " --hyp " +
                tmp("obs.txt")),
            0)
      << err();
  EXPECT_NE(out().find("100.00%"), std::string::npos) << out();
  ASSERT_EQ(run("evaluate --unit morpheme --gold " + data("corpus.tsv") + " --hyp " + tmp("ana.txt") + " --json"), 0);
  EXPECT_NE(out().find("\"correct\""), std::string::npos);
}

TEST_F(Cli, StrictExitsFourOnNoAnalysis) {
  std::string idx = tmp("idx");
  ASSERT_EQ(run("compile --lexicon " + data("lexicon.tsv") + " --inventory " + data("inventory.tsv") + " --out " + idx),
            0);
  std::ofstream(dir_ / "obs.txt") << "ngth ngth\n";
  std::string base = "analyze --index " + idx + " --matrices " + data("") + " --obs " + tmp("obs.txt");
  EXPECT_EQ(run(base), 0) << err();
  EXPECT_NE(out().find("-inf"), std::string::npos) << out();
  EXPECT_EQ(run(base + " --strict"), 4);
}

TEST_F(Cli, RunIsDeterministic) {
  std::string cfg = data("run.cfg");
  ASSERT_EQ(run("run --config " + cfg + " --set threads=3 --out " + tmp("a")), 0) << err();
  ASSERT_EQ(run("run --config " + cfg + " --set threads=1 --out " + tmp("b")), 0) << err();
  for (const char* f : {"observations.txt", "analyses.txt", "eval_morpheme.txt", "eval_diphone.json"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
  EXPECT_EQ(run("run --config " + cfg + " --set alpha=2 --out " + tmp("c")), 3);
}

}  // namespace
