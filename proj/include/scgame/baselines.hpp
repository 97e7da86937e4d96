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

#ifndef SCGAME_BASELINES_HPP_
#define SCGAME_BASELINES_HPP_

#include <optional>

#include "scgame/game.hpp"
#include "scgame/types.hpp"
#include "scgame/utilities.hpp"

namespace scgame {

// Defaults are a common RSS parameter set for a car (AV) and a truck (HV).
struct RssParams {
  double rho_av = 0.5;
  double rho_hv = 2.0;
  double a_accel_max_av = 3.5;
  double a_accel_max_hv = 3.0;
  double a_brake_min_av = -3.0;
  double a_brake_min_hv = -4.43;
  double a_brake_max_av = -5.0;
  double a_brake_max_hv = -8.0;
  // Padding added to both occupancy windows.
  double buffer_length = 4.6;
  // Time-margin deficit at which yielding reaches a_brake_max_av.
  double deficit_scale = 2.0;
  // Speed-tracking gain used while proceeding (1/s).
  double tracking_gain = 1.0;
  // The AV holds right of way: the HV is then assumed to keep its speed
  // through its response time instead of accelerating at a_accel_max_hv.
  bool av_priority = true;

  void validate() const;
};

struct RssCheck {
  double av_exit_time = 0.0;       // AV proceeding, window padded
  double hv_earliest_entry = 0.0;  // +inf when the HV can still stop
  bool clear = false;
};

// Worst-case occupancy comparison behind the RSS decision.
RssCheck rss_check(const VehicleState& av, const VehicleState& hv, const ConflictGeometry& geom,
                   const RssParams& p, double av_v_max);

// Per-episode RSS memory: the full-stop latch.
struct RssState {
  bool stopped = false;
};

Decision rss_policy(const VehicleState& av, const VehicleState& hv, const ConflictGeometry& geom,
                    const RssParams& p, double av_v_max, RssState& state);

struct AebParams {
  double threshold = 0.83;
  // AEB only arms once the earlier predicted conflict entry is this close.
  double horizon = 1.5;
  double a_brake = -5.0;

  void validate() const;
};

struct AebMargin {
  double t_entry_av = 0.0;
  double t_entry_hv = 0.0;
  double margin = 0.0;  // |t_entry_av - t_entry_hv|, +inf if either never arrives
  bool windows_overlap = false;
  bool armed = false;
};

// Constant-speed extrapolation of both vehicles' front-bumper occupancy of the
// conflict area.
AebMargin aeb_margin(const VehicleState& av, const VehicleState& hv, const ConflictGeometry& geom,
                     const AebParams& p);

// Stateless trigger: the braking command if the margin is below threshold
// (strictly) or the occupancy windows overlap.
std::optional<double> aeb_override(const VehicleState& av, const VehicleState& hv,
                                   const ConflictGeometry& geom, const AebParams& p);

// Latching wrapper: once triggered, keeps braking until both vehicles have
// cleared the conflict area or the AV is stopped.
class AebMonitor {
 public:
  explicit AebMonitor(AebParams p) : params_(p) {}

  std::optional<double> update(const VehicleState& av, const VehicleState& hv,
                               const ConflictGeometry& geom);

  bool latched() const { return latched_; }
  bool ever_fired() const { return ever_fired_; }

 private:
  AebParams params_;
  bool latched_ = false;
  bool ever_fired_ = false;
};

}  // namespace scgame

#endif  // SCGAME_BASELINES_HPP_
