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

#ifndef SCGAME_CONFIG_HPP_
#define SCGAME_CONFIG_HPP_

#include <cstdint>
#include <string>

#include "scgame/baselines.hpp"
#include "scgame/policy.hpp"
#include "scgame/utilities.hpp"
#include "scgame/visibility.hpp"

namespace scgame {

struct WorldConfig {
  double lane_width_av = 3.5;  // width of the AV lane, crossed by the HV
  double lane_width_hv = 3.5;  // width of the HV lane, crossed by the AV
  double exit_clearance = 3.5;  // intersection beyond the conflict area
  double interaction_start = 120.0;
  double algorithm_on = 100.0;
  double speed_limit_kmh = 45.0;
  double dt = 0.05;
  double decision_period = 0.5;
  double horizon = 60.0;
  double epilogue = 0.0;
  double overspeed_kmh = 15.0;
  double av_length = 4.6;
  double av_width = 1.8;
  double hv_length = 12.0;
  double hv_width = 2.5;
  double av_accel_max = 3.5;
  double av_brake_max = -5.0;
  double hv_accel_max = 3.0;
  double hv_brake_max = -8.0;

  void validate() const;
  ConflictGeometry conflict_geometry() const;
  double speed_limit() const { return speed_limit_kmh / 3.6; }
};

enum class DriverKind { kConstantThrottle, kGameAware, kVisibilityYielder, kAggressive, kExternal };

const char* to_string(DriverKind k);
DriverKind driver_kind_from_string(const std::string& s);

struct DriverModel {
  DriverKind kind = DriverKind::kConstantThrottle;
  double a_low = 0.1;
  double a_high = 0.15;
  double f_threshold = 0.5;   // VisibilityYielder
  double yield_gap = 4.0;     // VisibilityYielder: entry-time gap that prompts yielding (s)
  double aggressive_low = 0.8;
  double aggressive_high = 1.5;
  double aggressive_overshoot_kmh = 25.0;
  // Brake for an AV that announces NotYield whenever stopping before the
  // conflict area is still possible.
  bool rss_response = false;

  void validate() const;
};

struct ScenarioConfig {
  std::string name = "scenario";
  WorldConfig world;
  CabinGeometry cabin;
  ViewModel view;
  GameWeights weights;
  PredictionParams prediction;
  UtilityOptions utility;
  ActuationLimits limits;
  bool hysteresis = true;
  double hysteresis_margin = 0.02;
  RssParams rss;
  AebParams aeb;
  PolicyKind policy = PolicyKind::kSc;
  DriverModel driver;
  std::uint64_t seed = 0;
  double initial_speed_kmh = 45.0;
  double av_offset = 0.0;  // extra AV distance to the conflict area at spawn (m)
  std::string trace_path;
  std::string out_dir;

  void validate() const;
  GamePolicyConfig game_policy_config() const;
};

// YAML load/save. Speed values carry an explicit unit suffix ("45 km/h" or
// "12.5 m/s"); angles accept "deg" or "rad" and are written back in radians
// so that a round trip is exact.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& yaml_text);
std::string serialize_config(const ScenarioConfig& cfg);

// 64-bit FNV-1a of the canonical serialization, printed as 16 hex digits.
std::string config_hash(const ScenarioConfig& cfg);

// Applies "section.key=value" overrides on top of a config.
ScenarioConfig apply_override(const ScenarioConfig& cfg, const std::string& assignment);

}  // namespace scgame

#endif  // SCGAME_CONFIG_HPP_
