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

#include <fstream>
#include <string>

#include "scgame/config.hpp"

namespace scgame {
namespace {

const std::string kSource = SCGAME_SOURCE_DIR;

TEST(Config, DefaultsRoundTripThroughYaml) {
  const ScenarioConfig a;
  const std::string text = serialize_config(a);
  const ScenarioConfig b = parse_config(text);
  EXPECT_EQ(serialize_config(b), text);
  EXPECT_EQ(config_hash(a), config_hash(b));
}

TEST(Config, ShippedFilesRoundTrip) {
  for (const char* name : {"/configs/base.yaml", "/fixtures/sc.yaml", "/fixtures/nosc.yaml",
                           "/fixtures/rss.yaml"}) {
    const ScenarioConfig a = load_config(kSource + name);
    const ScenarioConfig b = parse_config(serialize_config(a));
    EXPECT_EQ(serialize_config(a), serialize_config(b)) << name;
    EXPECT_EQ(config_hash(a), config_hash(b)) << name;
  }
}

TEST(Config, ShippedBaseValues) {
  const ScenarioConfig c = load_config(kSource + "/configs/base.yaml");
  EXPECT_EQ(c.weights.lambda, 0.92);
  EXPECT_EQ(c.utility.efficiency_branch, EfficiencyBranch::kCorrected);
  EXPECT_EQ(c.utility.hv_safety, HvSafetyConvention::kSigned);
  EXPECT_EQ(c.aeb.horizon, 1.5);
  EXPECT_EQ(c.initial_speed_kmh, 45.0);
}

TEST(Config, HashChangesWithAnyField) {
  const ScenarioConfig a;
  EXPECT_NE(config_hash(a), config_hash(apply_override(a, "weights.lambda=0.5")));
  EXPECT_NE(config_hash(a), config_hash(apply_override(a, "scenario.seed=1")));
}

TEST(Config, UnknownKeyIsRejected) {
  EXPECT_THROW(parse_config("weights:\n  lamda: 0.5\n"), ConfigError);
  EXPECT_THROW(parse_config("nosuch:\n  x: 1\n"), ConfigError);
}

TEST(Config, SpeedUnits) {
  EXPECT_EQ(parse_config("scenario:\n  initial_speed: 55 km/h\n").initial_speed_kmh, 55.0);
  EXPECT_EQ(parse_config("scenario:\n  initial_speed: 55km/h\n").initial_speed_kmh, 55.0);
  EXPECT_DOUBLE_EQ(parse_config("scenario:\n  initial_speed: 10 m/s\n").initial_speed_kmh, 36.0);
  EXPECT_THROW(parse_config("scenario:\n  initial_speed: 55\n"), ConfigError);
  EXPECT_THROW(parse_config("scenario:\n  initial_speed: 55 mph\n"), ConfigError);
}

TEST(Config, AngleUnits) {
  const ScenarioConfig c = parse_config("view:\n  a_c: 60 deg\n");
  EXPECT_NEAR(c.view.a_c, 1.0471975511965976, 1e-15);
}

TEST(Config, MalformedValuesAreRejected) {
  EXPECT_THROW(parse_config("weights:\n  lambda: abc\n"), ConfigError);
  EXPECT_THROW(parse_config("scenario:\n  seed: -3\n"), ConfigError);
  EXPECT_THROW(parse_config("scenario:\n  policy: greedy\n"), ConfigError);
  EXPECT_THROW(parse_config("world: [1, 2]\n"), ConfigError);
  EXPECT_THROW(parse_config("world:\n  dt: [0.1\n"), ConfigError);
}

TEST(Config, ValidationRejectsInconsistentStepping) {
  EXPECT_THROW(parse_config("world:\n  dt: -0.05\n"), ConfigError);
  EXPECT_THROW(parse_config("world:\n  dt: 1.0\n  decision_period: 0.5\n"), ConfigError);
}

TEST(Config, OverrideSetsOneField) {
  const ScenarioConfig c = apply_override(ScenarioConfig{}, "scenario.policy=rss");
  EXPECT_EQ(c.policy, PolicyKind::kRss);
  const ScenarioConfig d = apply_override(c, "scenario.initial_speed=50 km/h");
  EXPECT_EQ(d.initial_speed_kmh, 50.0);
  EXPECT_EQ(d.policy, PolicyKind::kRss);
  EXPECT_THROW(apply_override(c, "policy=rss"), ConfigError);
  EXPECT_THROW(apply_override(c, "scenario.nope=1"), ConfigError);
  EXPECT_THROW(apply_override(c, "world.dt=-1"), ConfigError);
}

TEST(Config, MissingFileNamesThePath) {
  try {
    load_config("/nonexistent/dir/cfg.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/cfg.yaml"), std::string::npos);
  }
}

TEST(Config, ErrorsInFilesNameTheFile) {
  const std::string path = ::testing::TempDir() + "bad_cfg.yaml";
  std::ofstream(path) << "weights:\n  lamda: 1\n";
  try {
    load_config(path);
    FAIL();
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find(path), std::string::npos);
    EXPECT_NE(what.find("weights.lamda"), std::string::npos);
  }
}

TEST(Config, EmptyDocumentGivesDefaults) {
  EXPECT_EQ(serialize_config(parse_config("")), serialize_config(ScenarioConfig{}));
}

}  // namespace
}  // namespace scgame
