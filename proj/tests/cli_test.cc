// Copyright 2026 The SIDL Engine Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.h"
#include "test_util.h"

namespace sidl::cli {
namespace {

using json = nlohmann::ordered_json;
using testing::CorpusPath;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome RunCli(std::vector<std::string> args) {
  args.insert(args.begin(), "sidl");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("sidl_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    unsetenv("SIDL_SEED");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string Slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, ValidateExitCodes) {
  EXPECT_EQ(RunCli({"validate", CorpusPath("nim.sidl")}).status, kExitOk);
  std::string bad = Write("bad.sidl", "name(x).\nfact([x]).\n");
  Outcome o = RunCli({"validate", bad});
  EXPECT_EQ(o.status, kExitFailure);
  EXPECT_NE(o.out.find("only allowed in rule bodies"), std::string::npos);
  Outcome j = RunCli({"validate", "--json", bad});
  EXPECT_EQ(json::parse(j.out)["errors"], 1);
  EXPECT_EQ(RunCli({"validate", (dir_ / "missing.sidl").string()}).status,
            kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({}).status, kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}).status, kExitUsage);
  EXPECT_EQ(RunCli({"analyze", CorpusPath("nim.sidl"), "--mode", "guess"}).status,
            kExitUsage);
  EXPECT_EQ(RunCli({"run", CorpusPath("nim.sidl"), "--max-chronons", "0"}).status,
            kExitUsage);
  EXPECT_EQ(RunCli({"--help"}).status, kExitOk);
}

TEST_F(CliTest, RunNimScript) {
  std::string script = Write("nim.json", R"([
    {"chronon": 1, "player": "[alice]", "switch": "[main]", "action": "[3]"},
    {"chronon": 2, "player": "[bob]", "switch": "[main]", "action": "[3]"},
    {"chronon": 3, "player": "[alice]", "switch": "[main]", "action": "[3]"}
  ])");
  Outcome o = RunCli({"run", CorpusPath("nim.sidl"), "--script", script, "--json"});
  ASSERT_EQ(o.status, kExitOk) << o.err;
  json summary = json::parse(o.out);
  EXPECT_EQ(summary["accounts"]["[alice]"], 1.0);
  EXPECT_EQ(summary["accounts"]["[bob]"], -1.0);
  EXPECT_TRUE(summary["terminal"].get<bool>());
}

TEST_F(CliTest, RunIsByteDeterministic) {
  std::string a = (dir_ / "a.jsonl").string();
  std::string b = (dir_ / "b.jsonl").string();
  for (const std::string& out : {a, b}) {
    ASSERT_EQ(RunCli({"run", CorpusPath("mcp.sidl"), "--seed", "7",
                      "--max-chronons", "3", "--out", out})
                  .status,
              kExitOk);
  }
  EXPECT_EQ(Slurp(a), Slurp(b));
  EXPECT_FALSE(Slurp(a).empty());
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  std::string a = (dir_ / "env.jsonl").string();
  std::string b = (dir_ / "flag.jsonl").string();
  setenv("SIDL_SEED", "11", 1);
  ASSERT_EQ(RunCli({"run", CorpusPath("mcp.sidl"), "--max-chronons", "1",
                    "--out", a})
                .status,
            kExitOk);
  unsetenv("SIDL_SEED");
  ASSERT_EQ(RunCli({"run", CorpusPath("mcp.sidl"), "--max-chronons", "1",
                    "--seed", "11", "--out", b})
                .status,
            kExitOk);
  EXPECT_EQ(Slurp(a), Slurp(b));
  EXPECT_NE(Slurp(a).find("\"seed\":11"), std::string::npos);
  setenv("SIDL_SEED", "eleven", 1);
  EXPECT_EQ(RunCli({"run", CorpusPath("mcp.sidl")}).status, kExitUsage);
  unsetenv("SIDL_SEED");
}

TEST_F(CliTest, RunRpsSilent) {
  Outcome o = RunCli({"run", CorpusPath("rps.sidl"), "--json"});
  ASSERT_EQ(o.status, kExitOk);
  json summary = json::parse(o.out);
  EXPECT_EQ(summary["chronons"], 40);
  EXPECT_EQ(summary["accounts"]["[role1]"], 0.0);
}

TEST_F(CliTest, RunRejectsUnknownPlayers) {
  std::string script = Write("carol.json", R"([
    {"chronon": 1, "player": "[carol]", "switch": "[main]", "action": "[1]"}
  ])");
  EXPECT_EQ(RunCli({"run", CorpusPath("nim.sidl"), "--script", script}).status,
            kExitFailure);
  std::string broken = Write("broken.json", "[{\"chronon\": 1}]");
  EXPECT_EQ(RunCli({"run", CorpusPath("nim.sidl"), "--script", broken}).status,
            kExitUsage);
}

TEST_F(CliTest, AnalyzeModes) {
  Outcome minimax = RunCli({"analyze", CorpusPath("nim.sidl"), "--mode",
                            "minimax", "--prune-noop"});
  ASSERT_EQ(minimax.status, kExitOk);
  json m = json::parse(minimax.out);
  EXPECT_EQ(m["mode"], "minimax");
  EXPECT_EQ(m["results"]["values"]["[alice]"], 1.0);
  EXPECT_EQ(m["results"]["values"]["[bob]"], -1.0);
  EXPECT_TRUE(m.contains("limits"));
  EXPECT_FALSE(m["truncated"].get<bool>());

  EXPECT_EQ(RunCli({"analyze", CorpusPath("mcp3.sidl"), "--mode", "consistency"})
                .status,
            kExitOk);
  EXPECT_EQ(RunCli({"analyze", CorpusPath("mcp3_leaky.sidl"), "--mode",
                    "consistency"})
                .status,
            kExitFailure);
  Outcome mc = RunCli({"analyze", CorpusPath("price_negotiation.sidl"),
                       "--mode", "mc"});
  EXPECT_EQ(mc.status, kExitFailure);
  EXPECT_NE(mc.err.find("unlimited switch"), std::string::npos);

  std::string report = (dir_ / "mc.json").string();
  Outcome nim_mc = RunCli({"analyze", CorpusPath("nim.sidl"), "--mode", "mc",
                           "--playouts", "50", "--out", report});
  ASSERT_EQ(nim_mc.status, kExitOk);
  EXPECT_EQ(json::parse(Slurp(report))["results"]["samples"], 50);
}

}  // namespace
}  // namespace sidl::cli
