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

#include "scgame/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Earliest time the HV front reaches `distance` when it accelerates (or, if
// the AV has priority, holds speed) for its response time and then brakes at
// the reasonable-braking bound; +inf if it stops first.
double hv_worst_case_entry(double distance, double v0, const RssParams& p) {
  if (distance <= 0.0) return 0.0;
  const double rho = p.rho_hv;
  const double acc = p.av_priority ? 0.0 : p.a_accel_max_hv;
  const double d1 = v0 * rho + 0.5 * acc * rho * rho;
  if (distance <= d1) {
    if (acc == 0.0) return v0 > 0.0 ? distance / v0 : kInf;
    return (-v0 + std::sqrt(v0 * v0 + 2.0 * acc * distance)) / acc;
  }
  const double v1 = v0 + acc * rho;
  const double decel = -p.a_brake_min_hv;
  const double disc = v1 * v1 - 2.0 * decel * (distance - d1);
  if (disc < 0.0) return kInf;
  return rho + (v1 - std::sqrt(disc)) / decel;
}

// AV proceeding: current speed held for its response time, then maximum
// acceleration up to `v_cap`.
double av_proceed_time(double distance, double v0, const RssParams& p, double v_cap) {
  if (distance <= 0.0) return 0.0;
  const double d_resp = v0 * p.rho_av;
  if (distance <= d_resp) return distance / v0;
  const double cap = std::max(v_cap, v0);
  return p.rho_av + time_to_cover(distance - d_resp, v0, p.a_accel_max_av, cap, kInf);
}

}  // namespace

void RssParams::validate() const {
  if (!(rho_av > 0.0) || !(rho_hv > 0.0)) throw ConfigError("RSS response times must be positive");
  if (!(a_accel_max_av > 0.0) || !(a_accel_max_hv > 0.0)) {
    throw ConfigError("RSS accelerations must be positive");
  }
  if (!(a_brake_min_av < 0.0) || !(a_brake_min_hv < 0.0) || !(a_brake_max_av < 0.0) ||
      !(a_brake_max_hv < 0.0)) {
    throw ConfigError("RSS decelerations must be negative");
  }
  if (std::abs(a_brake_max_av) < std::abs(a_brake_min_av) ||
      std::abs(a_brake_max_hv) < std::abs(a_brake_min_hv)) {
    throw ConfigError("RSS maximum braking must be at least the minimum braking");
  }
  if (!(buffer_length >= 0.0) || !(deficit_scale > 0.0) || !(tracking_gain > 0.0)) {
    throw ConfigError("RSS buffer, deficit scale and tracking gain out of range");
  }
}

RssCheck rss_check(const VehicleState& av, const VehicleState& hv, const ConflictGeometry& geom,
                   const RssParams& p, double av_v_max) {
  RssCheck c;
  const double av_clear = geom.conflict_exit_av + av.length + p.buffer_length - av.s;
  const double hv_gap = geom.conflict_entry_hv - p.buffer_length - hv.s;
  const bool hv_past = hv.s - hv.length > geom.conflict_exit_hv;
  if (av_clear <= 0.0 || hv_past) {
    c.av_exit_time = 0.0;
    c.hv_earliest_entry = kInf;
    c.clear = true;
    return c;
  }
  c.av_exit_time = av_proceed_time(av_clear, av.v, p, av_v_max);
  c.hv_earliest_entry = hv_worst_case_entry(hv_gap, hv.v, p);
  c.clear = c.av_exit_time < c.hv_earliest_entry;
  return c;
}

Decision rss_policy(const VehicleState& av, const VehicleState& hv, const ConflictGeometry& geom,
                    const RssParams& p, double av_v_max, RssState& state) {
  const RssCheck check = rss_check(av, hv, geom, p, av_v_max);
  Decision d;
  d.reason = SelectionReason::kRule;
  // Past the point where even maximal braking stops short of the entry line,
  // yielding would park the AV in the conflict area; clearing it is the
  // proper response.
  const double to_entry = geom.conflict_entry_av - av.s;
  const bool committed =
      !state.stopped && av.v > 0.0 && to_entry < av.v * av.v / (-2.0 * p.a_brake_max_av);
  if (check.clear || committed) {
    state.stopped = false;
    d.strategy = Strategy::kNotYield;
    d.expected = {Strategy::kNotYield, Strategy::kYield};
    d.accel_cmd = std::clamp(p.tracking_gain * (av_v_max - av.v), p.a_brake_min_av,
                             p.a_accel_max_av);
    return d;
  }

  d.strategy = Strategy::kYield;
  d.expected = {Strategy::kYield, Strategy::kNotYield};
  if (state.stopped || av.v <= 0.0) {
    state.stopped = true;
    d.accel_cmd = 0.0;
    return d;
  }
  const double deficit = std::isfinite(check.hv_earliest_entry)
                             ? check.av_exit_time - check.hv_earliest_entry
                             : 0.0;
  const double scale = std::clamp(deficit / p.deficit_scale, 0.0, 1.0);
  double a = p.a_brake_min_av + (p.a_brake_max_av - p.a_brake_min_av) * scale;
  // Never plan to stop inside the conflict area.
  const double room = geom.conflict_entry_av - av.s - 0.5;
  if (room > 0.0) {
    a = std::min(a, -av.v * av.v / (2.0 * room));
  } else {
    a = p.a_brake_max_av;
  }
  d.accel_cmd = std::max(a, p.a_brake_max_av);
  return d;
}

void AebParams::validate() const {
  if (!(threshold > 0.0)) throw ConfigError("AEB threshold must be positive");
  if (!(horizon > 0.0)) throw ConfigError("AEB horizon must be positive");
  if (!(a_brake < 0.0)) throw ConfigError("AEB braking must be negative");
}

AebMargin aeb_margin(const VehicleState& av, const VehicleState& hv, const ConflictGeometry& geom,
                     const AebParams& p) {
  auto window = [](double s, double v, double entry, double exit) {
    const double to_entry = std::max(0.0, entry - s);
    const double to_exit = exit - s;
    if (to_exit <= 0.0) return std::pair{kInf, kInf};
    if (v <= 0.0) return to_entry <= 0.0 ? std::pair{0.0, kInf} : std::pair{kInf, kInf};
    return std::pair{to_entry / v, to_exit / v};
  };
  const auto [av_in, av_out] = window(av.s, av.v, geom.conflict_entry_av, geom.conflict_exit_av);
  const auto [hv_in, hv_out] = window(hv.s, hv.v, geom.conflict_entry_hv, geom.conflict_exit_hv);

  AebMargin m;
  m.t_entry_av = av_in;
  m.t_entry_hv = hv_in;
  m.margin = std::isfinite(av_in) && std::isfinite(hv_in) ? std::abs(av_in - hv_in) : kInf;
  m.windows_overlap = std::isfinite(av_in) && std::isfinite(hv_in) && av_in < hv_out &&
                      hv_in < av_out;
  m.armed = std::min(av_in, hv_in) <= p.horizon;
  return m;
}

std::optional<double> aeb_override(const VehicleState& av, const VehicleState& hv,
                                   const ConflictGeometry& geom, const AebParams& p) {
  const AebMargin m = aeb_margin(av, hv, geom, p);
  if (m.armed && (m.windows_overlap || m.margin < p.threshold)) return p.a_brake;
  return std::nullopt;
}

std::optional<double> AebMonitor::update(const VehicleState& av, const VehicleState& hv,
                                         const ConflictGeometry& geom) {
  if (latched_) {
    const bool av_clear = av.s - av.length > geom.conflict_exit_av;
    const bool hv_clear = hv.s - hv.length > geom.conflict_exit_hv;
    const bool av_before = av.s < geom.conflict_entry_av;
    const bool hv_before = hv.s < geom.conflict_entry_hv;
    const bool conflict_cleared = (av_clear || av_before) && (hv_clear || hv_before) &&
                                  (av_clear || hv_clear);
    if (conflict_cleared || av.v <= 0.0) {
      latched_ = false;
    } else {
      return params_.a_brake;
    }
  }
  if (auto cmd = aeb_override(av, hv, geom, params_)) {
    latched_ = true;
    ever_fired_ = true;
    return cmd;
  }
  return std::nullopt;
}

}  // namespace scgame
