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

#include "scgame/utilities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scgame {

void GameWeights::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !(gamma >= 0.0)) {
    throw ConfigError("game weights must be non-negative");
  }
  if (!(lambda >= 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in [0,1)");
}

double ConflictGeometry::l_risk(Vehicle leader, double leader_length) const {
  if (l_risk_override) return *l_risk_override;
  const double span = leader == Vehicle::kAv ? conflict_exit_av - conflict_entry_av
                                             : conflict_exit_hv - conflict_entry_hv;
  return span + leader_length;
}

double ConflictGeometry::l_safe(Vehicle leader, double leader_length) const {
  if (l_safe_override) return *l_safe_override;
  const double span = leader == Vehicle::kAv ? intersection_exit_av - conflict_entry_av
                                             : intersection_exit_hv - conflict_entry_hv;
  return span + leader_length;
}

void ConflictGeometry::validate() const {
  if (!(conflict_entry_av < conflict_exit_av) || !(conflict_entry_hv < conflict_exit_hv)) {
    throw ConfigError("conflict entry must precede exit on both paths");
  }
  if (!(intersection_exit_av >= conflict_exit_av) || !(intersection_exit_hv >= conflict_exit_hv)) {
    throw ConfigError("intersection exit must not precede conflict exit");
  }
  if (l_risk_override && !(*l_risk_override > 0.0)) throw ConfigError("L_risk must be positive");
  if (l_risk_override && l_safe_override && !(*l_risk_override < *l_safe_override)) {
    throw ConfigError("require L_risk < L_safe");
  }
}

void PredictionParams::validate() const {
  if (!(a_yield < 0.0)) throw ConfigError("a_yield must be negative");
  if (!(a_go >= 0.0)) throw ConfigError("a_go must be non-negative");
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (!(v_max_av > 0.0) || !(v_max_hv > 0.0)) throw ConfigError("v_max must be positive");
  if (!(v_follower_floor > 0.0)) throw ConfigError("v_follower_floor must be positive");
}

double time_to_cover(double distance, double v0, double accel, double v_cap, double horizon) {
  if (distance <= 0.0) return 0.0;
  double t = std::numeric_limits<double>::infinity();
  if (accel > 0.0 && v0 < v_cap) {
    const double t_acc = (v_cap - v0) / accel;
    const double d_acc = v0 * t_acc + 0.5 * accel * t_acc * t_acc;
    if (distance <= d_acc) {
      t = (-v0 + std::sqrt(v0 * v0 + 2.0 * accel * distance)) / accel;
    } else {
      t = t_acc + (distance - d_acc) / v_cap;
    }
  } else if (accel >= 0.0) {
    if (v0 > 0.0) t = distance / v0;
  } else {
    const double decel = -accel;
    const double disc = v0 * v0 - 2.0 * decel * distance;
    if (disc >= 0.0) t = (v0 - std::sqrt(disc)) / decel;
  }
  return std::min(t, horizon);
}

double speed_after(double t, double v0, double accel, double v_cap) {
  if (accel > 0.0 && v0 < v_cap) return std::min(v_cap, v0 + accel * t);
  if (accel >= 0.0) return v0;
  return std::max(0.0, v0 + accel * t);
}

namespace {

struct Motion {
  double distance;
  double v0;
  double accel;
  double v_cap;
};

Motion motion_for(const VehicleState& veh, double entry, double exit, Strategy s,
                  double v_max, const PredictionParams& p, const char* who) {
  if (veh.s > exit) throw PredictionError(std::string(who) + " is already past its conflict exit");
  const double accel = s == Strategy::kYield ? p.a_yield : p.a_go;
  return {std::max(0.0, entry - veh.s), veh.v, accel, std::max(v_max, veh.v)};
}

}  // namespace

ArrivalPrediction predict_arrivals(const VehicleState& av, const VehicleState& hv,
                                   StrategyProfile profile, const ConflictGeometry& geom,
                                   const PredictionParams& params) {
  const Motion m_av = motion_for(av, geom.conflict_entry_av, geom.conflict_exit_av, profile.av,
                                 params.v_max_av, params, "AV");
  const Motion m_hv = motion_for(hv, geom.conflict_entry_hv, geom.conflict_exit_hv, profile.hv,
                                 params.v_max_hv, params, "HV");

  ArrivalPrediction pred;
  pred.t_av = time_to_cover(m_av.distance, m_av.v0, m_av.accel, m_av.v_cap, params.t_max);
  pred.t_hv = time_to_cover(m_hv.distance, m_hv.v0, m_hv.accel, m_hv.v_cap, params.t_max);
  pred.leader = pred.t_av <= pred.t_hv ? Vehicle::kAv : Vehicle::kHv;
  pred.delta_t = std::abs(pred.t_av - pred.t_hv);

  const double t_lead = std::min(pred.t_av, pred.t_hv);
  const Motion& follower = pred.leader == Vehicle::kAv ? m_hv : m_av;
  const double leader_length = pred.leader == Vehicle::kAv ? av.length : hv.length;
  pred.v_follower = speed_after(t_lead, follower.v0, follower.accel, follower.v_cap);

  const double v = std::max(pred.v_follower, params.v_follower_floor);
  pred.dt_rsk = geom.l_risk(pred.leader, leader_length) / v;
  pred.dt_saf = geom.l_safe(pred.leader, leader_length) / v;
  return pred;
}

double safety_core(double delta_t, double dt_rsk, double dt_saf) {
  if (delta_t <= dt_rsk) return delta_t / dt_rsk - 1.0;
  if (delta_t < dt_saf) return (delta_t - dt_rsk) / (dt_saf - dt_rsk);
  return 1.0;
}

double safety_core(const ArrivalPrediction& pred) {
  return safety_core(pred.delta_t, pred.dt_rsk, pred.dt_saf);
}

double efficiency(double t_remaining, double l_remaining, double v_max, EfficiencyBranch branch,
                  double u_t_min) {
  if (t_remaining < 0.0) throw EfficiencyError("remaining time must be non-negative");
  if (l_remaining <= 0.0) return 1.0;
  const double t_eff = l_remaining / v_max;
  const double linear = 1.0 - (t_remaining - t_eff) / t_eff;
  if (branch == EfficiencyBranch::kPrinted) {
    return t_remaining <= t_eff ? linear : 1.0;
  }
  return t_remaining > t_eff ? std::max(linear, u_t_min) : 1.0;
}

double social_fitness(double f_theta, StrategyProfile profile) {
  return f_theta * tacitness(profile);
}

double hv_safety(double u_s, double f_theta, HvSafetyConvention convention) {
  // std::pow(0, 0) == 1, which gives u_s,HV = 1 for an unseen AV.
  if (u_s >= 0.0) return std::pow(u_s, f_theta);
  const double mag = std::pow(-u_s, f_theta);
  return convention == HvSafetyConvention::kLiteral ? mag : -mag;
}

double av_utility(const UtilityComponents& c, const GameWeights& w, double u_hv) {
  return (1.0 - w.lambda) * (w.alpha * c.u_s + w.beta * c.u_t_av + w.gamma * c.u_sf_av) +
         w.lambda * u_hv;
}

double hv_utility(const UtilityComponents& c, const GameWeights& w, StrategyProfile profile) {
  return w.alpha * c.u_s_hv + w.beta * c.u_t_hv + w.lambda_hv(profile.hv) * c.u_altr_hv;
}

UtilityMatrix build_matrix(const VehicleState& av, const VehicleState& hv, double f_theta,
                           const ConflictGeometry& geom, const GameWeights& weights,
                           const PredictionParams& params, const UtilityOptions& options) {
  UtilityMatrix m;
  m.f_theta = f_theta;
  const double d_av = std::max(0.0, geom.conflict_entry_av - av.s);
  const double d_hv = std::max(0.0, geom.conflict_entry_hv - hv.s);
  for (Strategy sa : kStrategies) {
    for (Strategy sh : kStrategies) {
      const StrategyProfile p{sa, sh};
      MatrixEntry& e = m.at(p);
      e.prediction = predict_arrivals(av, hv, p, geom, params);
      UtilityComponents& c = e.components;
      c.u_s = safety_core(e.prediction);
      c.u_t_av = efficiency(e.prediction.t_av, d_av, params.v_max_av, options.efficiency_branch,
                            options.u_t_min);
      c.u_sf_av = social_fitness(f_theta, p);
      c.u_s_hv = hv_safety(c.u_s, f_theta, options.hv_safety);
      c.u_t_hv = efficiency(e.prediction.t_hv, d_hv, params.v_max_hv, options.efficiency_branch,
                            options.u_t_min);
      c.u_altr_hv = altruism(f_theta, c.u_t_av);
      e.u_hv = hv_utility(c, weights, p);
      e.u_av = av_utility(c, weights, e.u_hv);
    }
  }
  return m;
}

}  // namespace scgame
