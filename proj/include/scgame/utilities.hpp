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

#ifndef SCGAME_UTILITIES_HPP_
#define SCGAME_UTILITIES_HPP_

#include <array>
#include <optional>

#include "scgame/types.hpp"

namespace scgame {

struct GameWeights {
  double alpha = 1.0;   // safety
  double beta = 0.5;    // efficiency
  double gamma = 0.4;   // social fitness
  double lambda = 0.2;  // reciprocity, in [0,1)

  // The HV's altruism weight follows its own strategy: lambda when it
  // yields, zero otherwise.
  double lambda_hv(Strategy hv) const { return hv == Strategy::kYield ? lambda : 0.0; }

  static GameWeights nosc(GameWeights base) {
    base.gamma = 0.0;
    base.lambda = 0.0;
    return base;
  }

  void validate() const;

  friend bool operator==(const GameWeights&, const GameWeights&) = default;
};

enum class Vehicle { kAv, kHv };

constexpr const char* to_string(Vehicle v) { return v == Vehicle::kAv ? "AV" : "HV"; }

// Arc-length landmarks of the conflict area on both paths (front-bumper
// coordinates, same origin as VehicleState::s).
struct ConflictGeometry {
  double conflict_entry_av = 0.0;
  double conflict_exit_av = 3.5;
  double conflict_entry_hv = 0.0;
  double conflict_exit_hv = 3.5;
  double intersection_exit_av = 7.0;
  double intersection_exit_hv = 7.0;
  std::optional<double> l_risk_override;
  std::optional<double> l_safe_override;

  // Distance the leader covers from conflict entry until it has just left
  // the conflict area / the whole intersection.
  double l_risk(Vehicle leader, double leader_length) const;
  double l_safe(Vehicle leader, double leader_length) const;

  void validate() const;
};

enum class EfficiencyBranch { kPrinted, kCorrected };
enum class HvSafetyConvention { kLiteral, kSigned };

struct PredictionParams {
  double a_yield = -2.0;
  double a_go = 1.0;
  double t_max = 30.0;
  double v_max_av = 45.0 / 3.6;
  double v_max_hv = 45.0 / 3.6;
  // Lower bound on the follower speed used for the Δt thresholds, so a
  // crawling follower does not produce infinite thresholds.
  double v_follower_floor = 0.5;

  void validate() const;
};

struct UtilityOptions {
  EfficiencyBranch efficiency_branch = EfficiencyBranch::kPrinted;
  HvSafetyConvention hv_safety = HvSafetyConvention::kLiteral;
  double u_t_min = -1.0;

  friend bool operator==(const UtilityOptions&, const UtilityOptions&) = default;
};

struct ArrivalPrediction {
  double delta_t = 0.0;
  double t_av = 0.0;
  double t_hv = 0.0;
  Vehicle leader = Vehicle::kAv;
  double v_follower = 0.0;
  double dt_rsk = 0.0;
  double dt_saf = 0.0;
};

// Time for a point mass starting at speed v0 to cover `distance` under the
// constant acceleration `accel`, with speed held at `v_cap` once reached and
// never negative. Returns `horizon` if the distance is not covered by then.
double time_to_cover(double distance, double v0, double accel, double v_cap, double horizon);

// Speed of the same motion after `t` seconds.
double speed_after(double t, double v0, double accel, double v_cap);

ArrivalPrediction predict_arrivals(const VehicleState& av, const VehicleState& hv,
                                   StrategyProfile profile, const ConflictGeometry& geom,
                                   const PredictionParams& params);

double safety_core(const ArrivalPrediction& pred);
double safety_core(double delta_t, double dt_rsk, double dt_saf);

double efficiency(double t_remaining, double l_remaining, double v_max,
                  EfficiencyBranch branch = EfficiencyBranch::kPrinted, double u_t_min = -1.0);

constexpr double tacitness(StrategyProfile p) { return p.av == p.hv ? 0.0 : 1.0; }

double social_fitness(double f_theta, StrategyProfile profile);

double hv_safety(double u_s, double f_theta, HvSafetyConvention convention = HvSafetyConvention::kLiteral);

constexpr double altruism(double f_theta, double u_t_av) { return f_theta * u_t_av; }

struct UtilityComponents {
  double u_s = 0.0;  // shared safety core, also the AV safety utility
  double u_t_av = 0.0;
  double u_sf_av = 0.0;
  double u_s_hv = 0.0;
  double u_t_hv = 0.0;
  double u_altr_hv = 0.0;
};

double av_utility(const UtilityComponents& c, const GameWeights& w, double u_hv);
double hv_utility(const UtilityComponents& c, const GameWeights& w, StrategyProfile profile);

struct MatrixEntry {
  double u_av = 0.0;
  double u_hv = 0.0;
  UtilityComponents components;
  ArrivalPrediction prediction;
};

struct UtilityMatrix {
  // entries[m][n]: AV strategy m, HV strategy n, both indexed by index_of().
  std::array<std::array<MatrixEntry, 2>, 2> entries{};
  double f_theta = 0.0;

  const MatrixEntry& at(StrategyProfile p) const {
    return entries[index_of(p.av)][index_of(p.hv)];
  }
  MatrixEntry& at(StrategyProfile p) { return entries[index_of(p.av)][index_of(p.hv)]; }
};

UtilityMatrix build_matrix(const VehicleState& av, const VehicleState& hv, double f_theta,
                           const ConflictGeometry& geom, const GameWeights& weights,
                           const PredictionParams& params, const UtilityOptions& options = {});

}  // namespace scgame

#endif  // SCGAME_UTILITIES_HPP_
