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

#ifndef SCGAME_SIM_HPP_
#define SCGAME_SIM_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scgame/baselines.hpp"
#include "scgame/config.hpp"
#include "scgame/drivers.hpp"
#include "scgame/game.hpp"
#include "scgame/policy.hpp"
#include "scgame/visibility.hpp"

namespace scgame {

enum class Classification { kNormal, kDanger, kFullStop, kFailed };
const char* to_string(Classification c);

// Initial-speed bins, closed on the left: [10,30) [30,40) [40,50) [50,70].
enum class SpeedBin { kLow, kLowMid, kMid, kHigh, kNone };
const char* to_string(SpeedBin b);
SpeedBin speed_bin(double speed_kmh);

// Semi-implicit Euler: v' = max(0, v + a dt), s' = s + v' dt, with the
// command saturated to [a_min, a_max].
VehicleState step(const VehicleState& x, double a_cmd, double a_min, double a_max, double dt);

// World frame: the HV drives along +x on y = 0, the AV along +y on x = 0; the
// conflict area is the square where the two lanes cross.
struct WorldPoses {
  Pose2 hv_front;
  PlanarBody hv_body;
  PlanarBody av_body;
};
WorldPoses world_poses(const WorldConfig& w, const VehicleState& av, const VehicleState& hv);

// Axis-aligned footprint overlap of the two bodies (touching counts).
bool bodies_overlap(const WorldConfig& w, const VehicleState& av, const VehicleState& hv);

struct StepSample {
  double t = 0.0;
  VehicleState av;
  VehicleState hv;
  double f_theta = 0.0;
  Region region = Region::kElsewhere;
  bool active = false;         // policy switched on
  bool decision_tick = false;  // policy re-solved on this step
  Strategy strategy = Strategy::kYield;
  SelectionReason reason = SelectionReason::kUniqueNE;
  StrategyProfile expected;
  bool held = false;
  int equilibria = 0;
  double av_cmd = 0.0;  // after AEB override, before saturation
  double hv_cmd = 0.0;
  std::optional<MatrixEntry> entry;  // payoff entry of the expected profile
  double aeb_margin = 0.0;
  bool aeb = false;
  bool post_arrival = false;
};

struct ArrivalEvent {
  double t = 0.0;
  Vehicle leader = Vehicle::kAv;
  double lag_distance = 0.0;  // lagging vehicle's remaining distance to conflict entry
  double lag_speed = 0.0;
  double f_theta = 0.0;
  Region region = Region::kElsewhere;
};

struct EpisodeRecord {
  std::string name;
  std::string policy;
  std::string driver;
  std::uint64_t seed = 0;
  std::string config_hash;
  double initial_speed_kmh = 0.0;
  double speed_limit_kmh = 0.0;
  SpeedBin bin = SpeedBin::kNone;
  std::vector<StepSample> samples;
  std::optional<ArrivalEvent> arrival;
  bool aeb_fired = false;  // before the leader's arrival
  bool post_arrival_aeb = false;
  bool collision = false;
  bool overspeed = false;
  bool timeout = false;
  bool aborted = false;
  int decel_decisions = 0;  // decision ticks commanding a < 0 before arrival
  double tta = 0.0;
  Classification classification = Classification::kNormal;
};

// L / v of the lagging vehicle at the leader's arrival; -1 if it is stopped.
// Throws MetricError when the record holds no arrival.
double tta(const EpisodeRecord& r);

// FullStop (TTA = -1) > Failed (overspeed, timeout or no arrival) > Danger
// (AEB before arrival, or collision) > Normal.
Classification classify(const EpisodeRecord& r);

// One episode of the approach protocol, advanced one dt at a time. The
// headless runner and the interactive bridge both drive this class.
class Episode {
 public:
  Episode(const ScenarioConfig& cfg, std::uint64_t seed);
  Episode(const ScenarioConfig& cfg, std::uint64_t seed, std::unique_ptr<Policy> policy,
          std::unique_ptr<HvDriver> driver);

  bool done() const { return done_; }
  // Advances one step. Returns false once the episode has ended.
  bool advance();
  // Runs to completion and returns the finalized record.
  EpisodeRecord run();
  EpisodeRecord finish();
  void abort();

  // Only meaningful when the HV driver is External.
  void set_hv_control(double throttle, double brake);

  const EpisodeRecord& record() const { return rec_; }
  const StepSample& last() const { return rec_.samples.back(); }
  // Current states with the held decision, for live displays.
  StepSample snapshot() const;
  const BlindZone& blind_zone() const { return bz_; }
  const ScenarioConfig& config() const { return cfg_; }
  double time() const { return t_; }
  long step_index() const { return step_; }

 private:
  void init(std::uint64_t seed);
  StepSample observe() const;
  double av_command(StepSample& sample);
  double aftermath_av_command() const;

  ScenarioConfig cfg_;
  ConflictGeometry geom_;
  BlindZone bz_;
  std::unique_ptr<Policy> policy_;
  std::unique_ptr<HvDriver> driver_;
  ExternalDriver* external_ = nullptr;
  AebMonitor aeb_;
  VehicleState av_;
  VehicleState hv_;
  double t_ = 0.0;
  long step_ = 0;
  long period_steps_ = 10;
  long active_since_ = -1;
  Decision held_;
  std::optional<MatrixEntry> held_entry_;
  bool have_decision_ = false;
  bool done_ = false;
  bool finalized_ = false;
  double aftermath_until_ = 0.0;
  EpisodeRecord rec_;
};

std::unique_ptr<Policy> make_policy(const ScenarioConfig& cfg);

EpisodeRecord run_episode(const ScenarioConfig& cfg);

}  // namespace scgame

#endif  // SCGAME_SIM_HPP_
