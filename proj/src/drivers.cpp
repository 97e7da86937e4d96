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

#include "scgame/drivers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "scgame/game.hpp"

namespace scgame {

namespace {

constexpr double kStopMargin = 1.0;  // HV stops this far before the conflict entry

double entry_time(const VehicleState& x, double entry, double exit) {
  if (x.s > exit) return std::numeric_limits<double>::infinity();
  const double d = std::max(0.0, entry - x.s);
  if (d == 0.0) return 0.0;
  if (x.v <= 0.0) return std::numeric_limits<double>::infinity();
  return d / x.v;
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double stopping_accel(double v, double gap) {
  if (v <= 0.0) return 0.0;
  if (gap <= 0.0) return -std::numeric_limits<double>::infinity();
  return -v * v / (2.0 * gap);
}

double AggressiveDriver::accel(const DriverInput& in) {
  return in.hv.v < in.speed_limit + overshoot_ ? a_ : 0.0;
}

double VisibilityYielderDriver::accel(const DriverInput& in) {
  if (!in.av_present || in.f_theta < f_threshold_) return cruise_;
  const double t_av = entry_time(in.av, in.geom.conflict_entry_av, in.geom.conflict_exit_av);
  const double t_hv = entry_time(in.hv, in.geom.conflict_entry_hv, in.geom.conflict_exit_hv);
  if (!std::isfinite(t_av) || !std::isfinite(t_hv) || std::abs(t_av - t_hv) >= yield_gap_) {
    return cruise_;
  }
  const double a = stopping_accel(in.hv.v, in.geom.conflict_entry_hv - in.hv.s - kStopMargin);
  return a >= brake_bound_ ? a : cruise_;
}

double GameAwareDriver::accel(const DriverInput& in) {
  Strategy hv = Strategy::kNotYield;
  if (in.av_expected) {
    hv = in.av_expected->hv;
  } else if (in.av_present) {
    try {
      const UtilityMatrix m = build_matrix(in.av, in.hv, in.f_theta, in.geom, game_.weights,
                                           game_.prediction, game_.options);
      hv = select_decision(pure_nash(m), m).expected.hv;
    } catch (const PredictionError&) {
      hv = Strategy::kNotYield;
    }
  }
  if (hv == Strategy::kNotYield) return cruise_;
  const double gap = in.geom.conflict_entry_hv - in.hv.s - kStopMargin;
  if (gap <= 0.0) return cruise_;
  return std::max(stopping_accel(in.hv.v, gap), brake_bound_);
}

void ExternalDriver::set_control(double throttle, double brake) {
  auto clamp01 = [](double x) { return std::isfinite(x) ? std::clamp(x, 0.0, 1.0) : 0.0; };
  throttle_ = clamp01(throttle);
  brake_ = clamp01(brake);
}

double RssResponseDriver::accel(const DriverInput& in) {
  double a = inner_->accel(in);
  if (in.av_intent != Strategy::kNotYield) return a;
  if (in.av.s - in.av.length > in.geom.conflict_exit_av) return a;
  const double gap = in.geom.conflict_entry_hv - in.hv.s - kStopMargin;
  if (gap <= 0.0) return a;
  const double req = stopping_accel(in.hv.v, gap);
  if (req >= brake_limit_) a = std::min(a, req);
  return a;
}

std::unique_ptr<HvDriver> make_driver(const ScenarioConfig& cfg, std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0x64726976ULL));
  const DriverModel& d = cfg.driver;
  const double cruise = uniform(rng, d.a_low, d.a_high);
  std::unique_ptr<HvDriver> out;
  switch (d.kind) {
    case DriverKind::kConstantThrottle:
      out = std::make_unique<ConstantThrottleDriver>(cruise);
      break;
    case DriverKind::kAggressive:
      out = std::make_unique<AggressiveDriver>(uniform(rng, d.aggressive_low, d.aggressive_high),
                                               d.aggressive_overshoot_kmh / 3.6);
      break;
    case DriverKind::kVisibilityYielder:
      out = std::make_unique<VisibilityYielderDriver>(cruise, d.f_threshold, d.yield_gap,
                                                      cfg.rss.a_brake_min_hv);
      break;
    case DriverKind::kGameAware: {
      ScenarioConfig sc = cfg;
      sc.policy = PolicyKind::kSc;
      out = std::make_unique<GameAwareDriver>(cruise, sc.game_policy_config(), cfg.world.hv_brake_max);
      break;
    }
    case DriverKind::kExternal:
      out = std::make_unique<ExternalDriver>(cfg.world.hv_accel_max, cfg.world.hv_brake_max);
      break;
  }
  if (d.rss_response && d.kind != DriverKind::kExternal) {
    out = std::make_unique<RssResponseDriver>(std::move(out), cfg.world.hv_brake_max);
  }
  return out;
}

}  // namespace scgame
