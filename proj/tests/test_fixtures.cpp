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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "scgame/fixtures.hpp"
#include "scgame/trace.hpp"

namespace scgame {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = fs::path(SCGAME_SOURCE_DIR) / "fixtures";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Copies the fixture directory so a test can modify it.
fs::path scratch_copy(const std::string& tag) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("scgame_fixtures_" + tag);
  fs::remove_all(dir);
  fs::copy(kFixtures, dir, fs::copy_options::recursive);
  return dir;
}

TEST(Fixtures, AllPassOnShippedFiles) {
  const auto results = run_fixtures(kFixtures.string(), "", false);
  ASSERT_EQ(results.size(), kFixtureNames.size());
  for (const FixtureResult& r : results) {
    EXPECT_TRUE(r.pass) << fixtures_report({r});
    EXPECT_EQ(r.golden_line, -1) << r.name;
    for (const FixtureCheck& c : r.checks) EXPECT_TRUE(c.pass) << r.name << ": " << c.name;
  }
}

TEST(Fixtures, SignaturesMatchThePinnedCases) {
  const FixtureResult nosc = run_fixture(kFixtures.string(), "nosc", "", false);
  EXPECT_TRUE(nosc.record.aeb_fired);
  ASSERT_TRUE(nosc.record.arrival);
  EXPECT_EQ(nosc.record.arrival->f_theta, 0.0);

  const FixtureResult rss = run_fixture(kFixtures.string(), "rss", "", false);
  EXPECT_EQ(rss.record.classification, Classification::kDanger);

  const FixtureResult sc = run_fixture(kFixtures.string(), "sc", "", false);
  EXPECT_EQ(sc.record.classification, Classification::kNormal);
  EXPECT_GT(sc.record.tta, 0.83);
  EXPECT_GE(sc.record.arrival->f_theta, 0.5);
  EXPECT_GT(sc.record.decel_decisions, 0);
}

TEST(Fixtures, RegenerationReproducesGoldenBytes) {
  const fs::path dir = scratch_copy("regen");
  for (const std::string& name : kFixtureNames) {
    fs::remove(dir / "golden" / (name + ".ndjson"));
  }
  for (const FixtureResult& r : run_fixtures(dir.string(), "", true)) {
    EXPECT_EQ(slurp(dir / "golden" / (r.name + ".ndjson")),
              slurp(kFixtures / "golden" / (r.name + ".ndjson")))
        << r.name;
  }
}

TEST(Fixtures, PerturbedWeightFailsTheSocialCase) {
  const fs::path dir = scratch_copy("perturbed");
  std::string yaml = slurp(dir / "sc.yaml");
  const auto pos = yaml.find("lambda: 0.92");
  ASSERT_NE(pos, std::string::npos);
  yaml.replace(pos, 12, "lambda: 0");
  std::ofstream(dir / "sc.yaml", std::ios::binary) << yaml;

  const FixtureResult r = run_fixture(dir.string(), "sc", "", false);
  EXPECT_FALSE(r.pass);
  EXPECT_GE(r.golden_line, 0);
  bool named_failure = false;
  for (const FixtureCheck& c : r.checks) named_failure |= !c.pass;
  EXPECT_TRUE(named_failure) << fixtures_report({r});
  EXPECT_NE(fixtures_report({r}).find("FAIL"), std::string::npos);
}

TEST(Fixtures, MissingGoldenIsReported) {
  const fs::path dir = scratch_copy("missing");
  fs::remove(dir / "golden" / "rss.ndjson");
  const FixtureResult r = run_fixture(dir.string(), "rss", "", false);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.golden_line, -2);
  EXPECT_NE(fixtures_report({r}).find("golden trace missing"), std::string::npos);
}

TEST(Fixtures, StepsTableWrittenToOutDir) {
  const fs::path out = fs::path(::testing::TempDir()) / "scgame_fixture_out";
  fs::remove_all(out);
  fs::create_directories(out);
  const FixtureResult r = run_fixture(kFixtures.string(), "sc", out.string(), false);
  EXPECT_EQ(slurp(out / "sc.steps.tsv"), steps_tsv(r.record));
}

}  // namespace
}  // namespace scgame
