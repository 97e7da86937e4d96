// Copyright 2026 The scgame Authors
//
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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const std::string kSource = SCGAME_SOURCE_DIR;
const std::string kCli = SCGAME_CLI;

struct Result {
  int code = -1;
  std::string out;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result cli(const std::string& args) {
  const fs::path log = fs::path(::testing::TempDir()) / "scgame_cli_out.txt";
  const std::string cmd = "cd '" + kSource + "' && '" + kCli + "' " + args + " > '" +
                          log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(log);
  return r;
}

fs::path scratch(const std::string& tag) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("scgame_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Cli, RunPrintsSummary) {
  const Result r = cli("run --config configs/base.yaml --seed 3 --policy nosc");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("policy=nosc"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("seed=3"), std::string::npos) << r.out;
}

TEST(Cli, RunWritesTraceAndTable) {
  const fs::path dir = scratch("run");
  const Result r = cli("run --config fixtures/sc.yaml --out " + (dir / "t.ndjson").string() +
                       " --tsv " + (dir / "s.tsv").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(dir / "t.ndjson"), slurp(kSource + "/fixtures/golden/sc.ndjson"));
  EXPECT_NE(slurp(dir / "s.tsv").find("t\tav_s"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitOne) {
  EXPECT_EQ(cli("run --config no_such.yaml").code, 1);
  EXPECT_EQ(cli("run --set world.dt=-1").code, 1);
  EXPECT_EQ(cli("run --policy greedy").code, 1);
  EXPECT_EQ(cli("batch --n 0").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
  EXPECT_EQ(cli("").code, 1);
}

TEST(Cli, MissingConfigMessageNamesFile) {
  const Result r = cli("run --config no_such.yaml");
  EXPECT_NE(r.out.find("no_such.yaml"), std::string::npos) << r.out;
}

TEST(Cli, HelpAndVersionExitZero) {
  EXPECT_EQ(cli("--help").code, 0);
  const Result v = cli("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

TEST(Cli, UnwritableTraceIsAConfigLevelError) {
  EXPECT_EQ(cli("run --out /nonexistent/dir/t.ndjson").code, 1);
}

TEST(Cli, FixturesPassOnShippedFiles) {
  const Result r = cli("fixtures --config fixtures");
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(Cli, BrokenGoldenExitsThree) {
  const fs::path dir = scratch("fixtures");
  fs::copy(kSource + "/fixtures", dir, fs::copy_options::recursive);
  std::ofstream(dir / "golden" / "rss.ndjson", std::ios::binary) << "{}\n";
  const Result r = cli("fixtures --config " + dir.string());
  EXPECT_EQ(r.code, 3) << r.out;
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, CompareWritesThreeTables) {
  const fs::path dir = scratch("batch");
  const Result r =
      cli("batch --config configs/base.yaml --n 8 --seed 1 --compare --out " + dir.string());
  ASSERT_EQ(r.code, 0) << r.out;
  for (const char* p : {"sc", "nosc", "rss"}) {
    const std::string table = slurp(dir / (std::string(p) + ".table.tsv"));
    EXPECT_NE(table.find("config="), std::string::npos) << p;
    EXPECT_TRUE(fs::exists(dir / (std::string(p) + ".rows.tsv"))) << p;
    EXPECT_TRUE(fs::exists(dir / (std::string(p) + ".lag.tsv"))) << p;
  }
  EXPECT_NE(r.out.find("danger in Mid+High bins"), std::string::npos) << r.out;
}

TEST(Cli, BatchIsDeterministic) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  ASSERT_EQ(cli("batch --n 6 --seed 4 --threads 2 --out " + a.string()).code, 0);
  ASSERT_EQ(cli("batch --n 6 --seed 4 --threads 1 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a / "sc.rows.tsv"), slurp(b / "sc.rows.tsv"));
}

TEST(Cli, CalibrateWritesTable) {
  const fs::path dir = scratch("cal");
  const Result r = cli("calibrate --config configs/base.yaml --n 2 --candidates 2 --out " +
                       (dir / "cal.tsv").string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(slurp(dir / "cal.tsv").find("objective"), std::string::npos);
}

TEST(Cli, ServeRejectsBadPort) { EXPECT_EQ(cli("serve --port 70000").code, 1); }

}  // namespace
