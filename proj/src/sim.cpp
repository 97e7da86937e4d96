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

#include "scgame/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace scgame {

namespace {

constexpr double kAftermathCap = 20.0;  // s of unrecorded physics after the arrival
constexpr double kStopSpeed = 1e-9;     // m/s

bool tail_cleared(const VehicleState& x, double exit) { return x.s - x.length > exit; }

VehicleState lerp(const VehicleState& a, const VehicleState& b, double f) {
  VehicleState x = b;
  x.s = a.s + f * (b.s - a.s);
  x.v = a.v + f * (b.v - a.v);
  return x;
}

}  // namespace

const char* to_string(Classification c) {
  switch (c) {
    case Classification::kNormal:
      return "Normal";
    case Classification::kDanger:
      return "Danger";
    case Classification::kFullStop:
      return "FullStop";
    case Classification::kFailed:
      return "Failed";
  }
  return "Normal";
}

const char* to_string(SpeedBin b) {
  switch (b) {
    case SpeedBin::kLow:
      return "Low";
    case SpeedBin::kLowMid:
      return "LowMid";
    case SpeedBin::kMid:
      return "Mid";
    case SpeedBin::kHigh:
      return "High";
    case SpeedBin::kNone:
      return "None";
  }
  return "None";
}

SpeedBin speed_bin(double kmh) {
  if (kmh >= 10.0 && kmh < 30.0) return SpeedBin::kLow;
  if (kmh >= 30.0 && kmh < 40.0) return SpeedBin::kLowMid;
  if (kmh >= 40.0 && kmh < 50.0) return SpeedBin::kMid;
  if (kmh >= 50.0 && kmh <= 70.0) return SpeedBin::kHigh;
  return SpeedBin::kNone;
}

VehicleState step(const VehicleState& x, double a_cmd, double a_min, double a_max, double dt) {
  VehicleState y = x;
  y.a = std::clamp(a_cmd, a_min, a_max);
  y.v = x.v + y.a * dt;
  // Braking to rest leaves rounding residue; treat it as stopped.
  if (y.v < kStopSpeed) y.v = 0.0;
  y.s = x.s + y.v * dt;
  return y;
}

WorldPoses world_poses(const WorldConfig& w, const VehicleState& av, const VehicleState& hv) {
  WorldPoses p;
  const double hv_front_x = hv.s - w.lane_width_av / 2.0;
  const double av_front_y = av.s - w.lane_width_hv / 2.0;
  p.hv_front = {hv_front_x, 0.0, 0.0};
  p.hv_body.center = {hv_front_x - hv.length / 2.0, 0.0, 0.0};
  p.hv_body.length = hv.length;
  p.hv_body.width = hv.width;
  p.av_body.center = {0.0, av_front_y - av.length / 2.0, std::numbers::pi / 2.0};
  p.av_body.length = av.length;
  p.av_body.width = av.width;
  return p;
}

bool bodies_overlap(const WorldConfig& w, const VehicleState& av, const VehicleState& hv) {
  const double hv_x1 = hv.s - w.lane_width_av / 2.0;
  const double hv_x0 = hv_x1 - hv.length;
  const double av_y1 = av.s - w.lane_width_hv / 2.0;
  const double av_y0 = av_y1 - av.length;
  const bool x_overlap = hv_x0 <= av.width / 2.0 && -av.width / 2.0 <= hv_x1;
  const bool y_overlap = av_y0 <= hv.width / 2.0 && -hv.width / 2.0 <= av_y1;
  return x_overlap && y_overlap;
}

double tta(const EpisodeRecord& r) {
  if (!r.arrival) throw MetricError("episode has no leader arrival event");
  if (r.arrival->lag_speed <= 0.0) return -1.0;
  return r.arrival->lag_distance / r.arrival->lag_speed;
}

Classification classify(const EpisodeRecord& r) {
  // A stopped lagging vehicle is always reported as a full stop.
  if (r.arrival && tta(r) == -1.0) return Classification::kFullStop;
  if (r.overspeed || r.timeout) return Classification::kFailed;
  if (!r.arrival) return r.collision ? Classification::kDanger : Classification::kFailed;
  if (r.aeb_fired || r.collision) return Classification::kDanger;
  return Classification::kNormal;
}

std::unique_ptr<Policy> make_policy(const ScenarioConfig& cfg) {
  if (cfg.policy == PolicyKind::kRss) {
    return std::make_unique<RssPolicy>(cfg.rss, cfg.world.speed_limit());
  }
  return std::make_unique<GamePolicy>(cfg.game_policy_config());
}

Episode::Episode(const ScenarioConfig& cfg, std::uint64_t seed)
    : cfg_(cfg), aeb_(cfg.aeb) {
  cfg_.validate();
  policy_ = make_policy(cfg_);
  driver_ = make_driver(cfg_, seed);
  init(seed);
}

Episode::Episode(const ScenarioConfig& cfg, std::uint64_t seed, std::unique_ptr<Policy> policy,
                 std::unique_ptr<HvDriver> driver)
    : cfg_(cfg), policy_(std::move(policy)), driver_(std::move(driver)), aeb_(cfg.aeb) {
  cfg_.validate();
  init(seed);
}

void Episode::init(std::uint64_t seed) {
  external_ = dynamic_cast<ExternalDriver*>(driver_.get());
  geom_ = cfg_.world.conflict_geometry();
  bz_ = compute_blind_zone(cfg_.cabin);
  period_steps_ = std::max(1L, std::lround(cfg_.world.decision_period / cfg_.world.dt));

  const double v0 = cfg_.initial_speed_kmh / 3.6;
  av_ = {-(cfg_.world.interaction_start + cfg_.av_offset), v0, 0.0, cfg_.world.av_length,
         cfg_.world.av_width};
  hv_ = {-cfg_.world.interaction_start, v0, 0.0, cfg_.world.hv_length, cfg_.world.hv_width};

  rec_.name = cfg_.name;
  rec_.policy = to_string(cfg_.policy);
  rec_.driver = to_string(cfg_.driver.kind);
  rec_.seed = seed;
  rec_.config_hash = config_hash(cfg_);
  rec_.initial_speed_kmh = cfg_.initial_speed_kmh;
  rec_.speed_limit_kmh = cfg_.world.speed_limit_kmh;
  rec_.bin = speed_bin(cfg_.initial_speed_kmh);
}

void Episode::set_hv_control(double throttle, double brake) {
  if (external_) external_->set_control(throttle, brake);
}

StepSample Episode::observe() const {
  StepSample s;
  s.t = t_;
  s.av = av_;
  s.hv = hv_;
  const WorldPoses p = world_poses(cfg_.world, av_, hv_);
  const RelativePose rp = relative_pose(p.hv_front, p.av_body, cfg_.cabin, bz_, cfg_.view);
  s.region = rp.region;
  s.f_theta = visibility_probability(rp, cfg_.view);
  return s;
}

StepSample Episode::snapshot() const {
  StepSample s = observe();
  s.active = active_since_ >= 0;
  if (have_decision_) {
    s.strategy = held_.strategy;
    s.reason = held_.reason;
    s.expected = held_.expected;
    s.held = held_.held;
    s.equilibria = static_cast<int>(held_.equilibria.size());
    s.entry = held_entry_;
  }
  s.aeb = aeb_.latched();
  if (s.aeb) s.reason = SelectionReason::kOverride;
  s.post_arrival = rec_.arrival.has_value();
  return s;
}

double Episode::aftermath_av_command() const {
  const double v_max = cfg_.world.speed_limit();
  const double track = std::clamp(v_max - av_.v, cfg_.world.av_brake_max, cfg_.world.av_accel_max);
  if (av_.s >= geom_.conflict_entry_av || tail_cleared(hv_, geom_.conflict_exit_hv)) return track;
  const double a = stopping_accel(av_.v, geom_.conflict_entry_av - av_.s - 0.5);
  return std::max(std::min(a, 0.0), cfg_.world.av_brake_max);
}

double Episode::av_command(StepSample& sample) {
  const bool arrived = rec_.arrival.has_value();
  if (active_since_ < 0 && hv_.distance_to_entry() <= cfg_.world.algorithm_on) {
    active_since_ = step_;
  }
  sample.active = active_since_ >= 0;
  if (!sample.active) return 0.0;

  if ((step_ - active_since_) % period_steps_ == 0) {
    PolicyContext ctx{av_, hv_, sample.f_theta, geom_};
    try {
      PolicyOutput out = policy_->decide(ctx);
      held_ = out.decision;
      held_entry_.reset();
      if (out.matrix) held_entry_ = out.matrix->at(held_.expected);
      have_decision_ = true;
      sample.decision_tick = true;
      if (!arrived && held_.accel_cmd < 0.0) ++rec_.decel_decisions;
    } catch (const PredictionError&) {
      if (!arrived) throw;
      have_decision_ = false;
    }
  }
  if (arrived && !have_decision_) return aftermath_av_command();
  sample.strategy = held_.strategy;
  sample.reason = held_.reason;
  sample.expected = held_.expected;
  sample.held = held_.held;
  sample.equilibria = static_cast<int>(held_.equilibria.size());
  sample.entry = held_entry_;
  return held_.accel_cmd;
}

bool Episode::advance() {
  if (done_) return false;
  const bool arrived = rec_.arrival.has_value();
  StepSample sample = observe();
  sample.post_arrival = arrived;

  double a_av = av_command(sample);
  const AebMargin margin = aeb_margin(av_, hv_, geom_, cfg_.aeb);
  sample.aeb_margin = std::isfinite(margin.margin) ? margin.margin : -1.0;
  if (auto brake = aeb_.update(av_, hv_, geom_)) {
    a_av = *brake;
    sample.aeb = true;
    sample.reason = SelectionReason::kOverride;
    if (arrived) {
      rec_.post_arrival_aeb = true;
    } else {
      rec_.aeb_fired = true;
    }
  }

  DriverInput in;
  in.t = t_;
  in.hv = hv_;
  in.av = av_;
  in.f_theta = sample.f_theta;
  in.geom = geom_;
  in.speed_limit = cfg_.world.speed_limit();
  if (have_decision_) {
    in.av_intent = sample.aeb ? Strategy::kYield : held_.strategy;
    if (held_entry_) in.av_expected = held_.expected;
  }
  const double a_hv = driver_->accel(in);

  sample.av_cmd = a_av;
  sample.hv_cmd = a_hv;
  if (!arrived && hv_.v * 3.6 > cfg_.world.speed_limit_kmh + cfg_.world.overspeed_kmh) {
    rec_.overspeed = true;
  }
  if (!arrived || t_ <= rec_.arrival->t + cfg_.world.epilogue + 1e-9) {
    rec_.samples.push_back(sample);
  }

  const double dt = cfg_.world.dt;
  const VehicleState av1 = step(av_, a_av, cfg_.world.av_brake_max, cfg_.world.av_accel_max, dt);
  const VehicleState hv1 = step(hv_, a_hv, cfg_.world.hv_brake_max, cfg_.world.hv_accel_max, dt);

  if (!arrived) {
    const bool av_cross = av1.s >= geom_.conflict_entry_av && av_.s < geom_.conflict_entry_av;
    const bool hv_cross = hv1.s >= geom_.conflict_entry_hv && hv_.s < geom_.conflict_entry_hv;
    if (av_cross || hv_cross) {
      auto frac = [](double s0, double s1, double entry) {
        return s1 > s0 ? std::clamp((entry - s0) / (s1 - s0), 0.0, 1.0) : 1.0;
      };
      const double fa = av_cross ? frac(av_.s, av1.s, geom_.conflict_entry_av) : 2.0;
      const double fh = hv_cross ? frac(hv_.s, hv1.s, geom_.conflict_entry_hv) : 2.0;
      ArrivalEvent ev;
      ev.leader = fa <= fh ? Vehicle::kAv : Vehicle::kHv;
      const double f = std::min(fa, fh);
      ev.t = t_ + f * dt;
      const VehicleState av_t = lerp(av_, av1, f);
      const VehicleState hv_t = lerp(hv_, hv1, f);
      const VehicleState& lag = ev.leader == Vehicle::kAv ? hv_t : av_t;
      const double lag_entry =
          ev.leader == Vehicle::kAv ? geom_.conflict_entry_hv : geom_.conflict_entry_av;
      ev.lag_distance = std::max(0.0, lag_entry - lag.s);
      ev.lag_speed = lag.v;
      const WorldPoses p = world_poses(cfg_.world, av_t, hv_t);
      const RelativePose rp = relative_pose(p.hv_front, p.av_body, cfg_.cabin, bz_, cfg_.view);
      ev.region = rp.region;
      ev.f_theta = visibility_probability(rp, cfg_.view);
      rec_.arrival = ev;
      aftermath_until_ = ev.t + std::max(cfg_.world.epilogue, kAftermathCap);
    }
  }

  av_ = av1;
  hv_ = hv1;
  t_ += dt;
  ++step_;

  if (bodies_overlap(cfg_.world, av_, hv_)) {
    rec_.collision = true;
    done_ = true;
  } else if (!rec_.arrival) {
    if (t_ >= cfg_.world.horizon - 1e-9) {
      rec_.timeout = true;
      done_ = true;
    }
  } else if (t_ > rec_.arrival->t + cfg_.world.epilogue) {
    const bool av_clear = tail_cleared(av_, geom_.conflict_exit_av);
    const bool hv_clear = tail_cleared(hv_, geom_.conflict_exit_hv);
    const bool av_waiting = av_.v <= 0.0 && av_.s < geom_.conflict_entry_av;
    const bool hv_waiting = hv_.v <= 0.0 && hv_.s < geom_.conflict_entry_hv;
    if ((av_clear && hv_clear) || (av_clear && hv_waiting) || (hv_clear && av_waiting) ||
        t_ >= aftermath_until_) {
      done_ = true;
    }
  }
  return !done_;
}

void Episode::abort() {
  rec_.aborted = true;
  done_ = true;
}

EpisodeRecord Episode::finish() {
  if (!finalized_) {
    rec_.tta = rec_.arrival ? tta(rec_) : 0.0;
    rec_.classification = classify(rec_);
    finalized_ = true;
  }
  return rec_;
}

EpisodeRecord Episode::run() {
  while (advance()) {
  }
  return finish();
}

EpisodeRecord run_episode(const ScenarioConfig& cfg) {
  Episode ep(cfg, cfg.seed);
  return ep.run();
}

}  // namespace scgame
