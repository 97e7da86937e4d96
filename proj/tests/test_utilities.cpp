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

#include <algorithm>
#include <cmath>
#include <random>

#include "scgame/utilities.hpp"

namespace scgame {
namespace {

VehicleState vehicle(double s, double v, double length = 4.6) {
  VehicleState x;
  x.s = s;
  x.v = v;
  x.length = length;
  return x;
}

// Fine-step forward integration of a capped constant-acceleration motion.
double integrate_arrival(double distance, double v0, double accel, double v_cap, double horizon,
                         double* v_at = nullptr, double t_query = -1.0) {
  const double h = 1e-5;
  double s = 0.0;
  double v = v0;
  for (double t = 0.0; t < horizon; t += h) {
    if (t_query >= 0.0 && t >= t_query && v_at != nullptr) {
      *v_at = v;
      t_query = -1.0;
    }
    if (s >= distance) return t;
    const double v_next = std::clamp(v + accel * h, 0.0, v_cap);
    s += 0.5 * (v + v_next) * h;
    v = v_next;
  }
  return horizon;
}

TEST(Prediction, SymmetricApproachHasZeroGap) {
  const ConflictGeometry g;
  const PredictionParams p;
  const auto pred = predict_arrivals(vehicle(-50, 10), vehicle(-50, 10),
                                     {Strategy::kNotYield, Strategy::kNotYield}, g, p);
  EXPECT_EQ(pred.delta_t, 0.0);
}

TEST(Prediction, LeaderAtEntryGivesFollowerTravelTime) {
  const ConflictGeometry g;
  PredictionParams p;
  p.a_go = 0.0;
  const auto pred = predict_arrivals(vehicle(0, 8), vehicle(-50, 10),
                                     {Strategy::kNotYield, Strategy::kNotYield}, g, p);
  EXPECT_EQ(pred.leader, Vehicle::kAv);
  EXPECT_NEAR(pred.delta_t, 5.0, 1e-12);
}

TEST(Prediction, YieldThatStopsShortNeverArrives) {
  // 40 = 8t - t^2 has no real root: the AV stops after 16 m.
  const ConflictGeometry g;
  PredictionParams p;
  p.a_yield = -2.0;
  const auto pred = predict_arrivals(vehicle(-40, 8), vehicle(-30, 10),
                                     {Strategy::kYield, Strategy::kNotYield}, g, p);
  EXPECT_EQ(pred.t_av, p.t_max);
  EXPECT_EQ(integrate_arrival(40, 8, -2, 1e9, p.t_max), p.t_max);
  EXPECT_EQ(pred.leader, Vehicle::kHv);
}

TEST(Prediction, YieldingArrivalMatchesQuadraticAndIntegration) {
  // 12 = 8t - t^2 -> t = 2 (the first root).
  const ConflictGeometry g;
  PredictionParams p;
  p.a_yield = -2.0;
  p.a_go = 0.0;
  const auto pred = predict_arrivals(vehicle(-12, 8), vehicle(-30, 10),
                                     {Strategy::kYield, Strategy::kNotYield}, g, p);
  EXPECT_NEAR(pred.t_av, 2.0, 1e-12);
  EXPECT_NEAR(integrate_arrival(12, 8, -2, 1e9, p.t_max), 2.0, 1e-4);
  // The HV follows at constant speed: 3 s, gap 1 s, follower speed 10 m/s.
  EXPECT_EQ(pred.leader, Vehicle::kAv);
  EXPECT_NEAR(pred.delta_t, 1.0, 1e-12);
  EXPECT_NEAR(pred.v_follower, 10.0, 1e-12);
}

TEST(Prediction, ThresholdsFollowFollowerSpeed) {
  const ConflictGeometry g;
  const PredictionParams p;
  const VehicleState av = vehicle(-20, 9);
  const VehicleState hv = vehicle(-60, 11, 12.0);
  for (Strategy sa : kStrategies) {
    for (Strategy sh : kStrategies) {
      const auto pred = predict_arrivals(av, hv, {sa, sh}, g, p);
      const double len = pred.leader == Vehicle::kAv ? av.length : hv.length;
      const double v = std::max(pred.v_follower, p.v_follower_floor);
      EXPECT_NEAR(pred.dt_rsk * v, g.l_risk(pred.leader, len), 1e-12);
      EXPECT_NEAR(pred.dt_saf * v, g.l_safe(pred.leader, len), 1e-12);
      EXPECT_LT(pred.dt_rsk, pred.dt_saf);
      EXPECT_GE(pred.delta_t, 0.0);
    }
  }
}

TEST(Prediction, PastExitIsAnError) {
  const ConflictGeometry g;
  EXPECT_THROW(predict_arrivals(vehicle(g.conflict_exit_av + 1, 5), vehicle(-20, 5),
                                {Strategy::kYield, Strategy::kYield}, g, PredictionParams{}),
               PredictionError);
}

TEST(Prediction, TimeToCoverAgreesWithIntegration) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(1, 80), v(0, 15), a(-3, 3);
  for (int i = 0; i < 50; ++i) {
    const double dist = d(rng), v0 = v(rng), acc = a(rng), cap = 14.0;
    const double t = time_to_cover(dist, v0, acc, std::max(cap, v0), 30.0);
    const double ref = integrate_arrival(dist, v0, acc, std::max(cap, v0), 30.0);
    EXPECT_NEAR(t, ref, 1e-3) << dist << " " << v0 << " " << acc;
  }
}

TEST(Safety, Endpoints) {
  EXPECT_DOUBLE_EQ(safety_core(0.0, 1.0, 3.0), -1.0);
  EXPECT_DOUBLE_EQ(safety_core(1.0, 1.0, 3.0), 0.0);
  EXPECT_DOUBLE_EQ(safety_core(3.0, 1.0, 3.0), 1.0);
  EXPECT_DOUBLE_EQ(safety_core(1.0 + 0.25 * 2.0, 1.0, 3.0), 0.25);
  EXPECT_DOUBLE_EQ(safety_core(100.0, 1.0, 3.0), 1.0);
}

TEST(Safety, ContinuousNonDecreasingBounded) {
  const double r = 0.7, s = 2.3;
  double prev = safety_core(0.0, r, s);
  for (int i = 0; i <= 5000; ++i) {
    const double dt = 4.0 * i / 5000;
    const double u = safety_core(dt, r, s);
    EXPECT_GE(u, -1.0);
    EXPECT_LE(u, 1.0);
    EXPECT_GE(u, prev);
    EXPECT_LE(u - prev, 4.0 / 5000 / r + 1e-12);  // Lipschitz, so no jumps
    prev = u;
  }
}

TEST(Efficiency, PrintedAndCorrectedBranches) {
  const double l = 30.0, v = 10.0, t_eff = 3.0;
  EXPECT_DOUBLE_EQ(efficiency(t_eff, l, v), 1.0);
  EXPECT_DOUBLE_EQ(efficiency(0.5 * t_eff, l, v, EfficiencyBranch::kPrinted), 1.5);
  EXPECT_DOUBLE_EQ(efficiency(1e6, l, v, EfficiencyBranch::kPrinted), 1.0);
  EXPECT_NEAR(efficiency(2.0 * t_eff, l, v, EfficiencyBranch::kCorrected), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(efficiency(1e6, l, v, EfficiencyBranch::kCorrected, -1.0), -1.0);
  EXPECT_DOUBLE_EQ(efficiency(t_eff, l, v, EfficiencyBranch::kCorrected), 1.0);
}

TEST(Efficiency, NegativeTimeIsAnError) {
  EXPECT_THROW(efficiency(-0.1, 10, 10), EfficiencyError);
}

TEST(SocialFitness, TacitnessTable) {
  EXPECT_EQ(social_fitness(0.6, {Strategy::kYield, Strategy::kYield}), 0.0);
  EXPECT_EQ(social_fitness(0.6, {Strategy::kNotYield, Strategy::kNotYield}), 0.0);
  EXPECT_DOUBLE_EQ(social_fitness(0.6, {Strategy::kNotYield, Strategy::kYield}), 0.6);
  EXPECT_DOUBLE_EQ(social_fitness(0.6, {Strategy::kYield, Strategy::kNotYield}), 0.6);
  for (Strategy a : kStrategies) {
    for (Strategy b : kStrategies) EXPECT_EQ(social_fitness(0.0, {a, b}), 0.0);
  }
}

TEST(HvSafety, Conventions) {
  EXPECT_DOUBLE_EQ(hv_safety(-0.7, 0.0, HvSafetyConvention::kLiteral), 1.0);
  EXPECT_DOUBLE_EQ(hv_safety(0.64, 1.0), 0.64);
  EXPECT_NEAR(hv_safety(0.64, 0.5), 0.8, 1e-12);
  EXPECT_NEAR(hv_safety(-0.64, 0.5, HvSafetyConvention::kLiteral), 0.8, 1e-12);
  EXPECT_NEAR(hv_safety(-0.64, 0.5, HvSafetyConvention::kSigned), -0.8, 1e-12);
  for (int i = 0; i <= 100; ++i) {
    const double u = i / 100.0;
    EXPECT_DOUBLE_EQ(hv_safety(u, 1.0), u);
  }
}

TEST(Altruism, Product) {
  EXPECT_EQ(altruism(0.0, 0.9), 0.0);
  EXPECT_DOUBLE_EQ(altruism(1.0, 0.8), 0.8);
  EXPECT_NEAR(altruism(0.9558, 0.5), 0.4779, 1e-12);
}

TEST(Composition, AvUtilityHandArithmetic) {
  GameWeights w{1.0, 0.5, 0.3, 0.2};
  UtilityComponents c;
  c.u_s = 0.5;
  c.u_t_av = 1.0;
  c.u_sf_av = 0.6;
  EXPECT_NEAR(av_utility(c, w, 0.4), 1.024, 1e-12);
  w.lambda = 0.0;
  w.gamma = 0.0;
  EXPECT_NEAR(av_utility(c, w, 0.4), 1.0 * 0.5 + 0.5 * 1.0, 1e-12);
  w.lambda = 1.0 - 1e-12;
  EXPECT_NEAR(av_utility(c, w, 0.4), 0.4, 1e-9);
}

TEST(Composition, HvUtilityHandArithmetic) {
  const GameWeights w{1.0, 0.5, 0.3, 0.2};
  UtilityComponents c;
  c.u_s_hv = 0.8;
  c.u_t_hv = 1.0;
  c.u_altr_hv = 0.5;
  EXPECT_NEAR(hv_utility(c, w, {Strategy::kNotYield, Strategy::kYield}), 1.4, 1e-12);
  EXPECT_NEAR(hv_utility(c, w, {Strategy::kYield, Strategy::kNotYield}), 1.3, 1e-12);
  GameWeights w0 = w;
  w0.lambda = 0.0;
  for (Strategy h : kStrategies) {
    EXPECT_NEAR(hv_utility(c, w0, {Strategy::kYield, h}), 1.3, 1e-12);
  }
}

TEST(Matrix, NoScIgnoresVisibilityOnAvSide) {
  const ConflictGeometry g;
  const PredictionParams p;
  const GameWeights w = GameWeights::nosc(GameWeights{});
  const VehicleState av = vehicle(-35, 11), hv = vehicle(-40, 12, 12.0);
  const UtilityMatrix m0 = build_matrix(av, hv, 0.0, g, w, p);
  for (double f : {0.2, 0.5, 1.0}) {
    const UtilityMatrix m = build_matrix(av, hv, f, g, w, p);
    for (Strategy a : kStrategies) {
      for (Strategy b : kStrategies) {
        EXPECT_EQ(m.at({a, b}).u_av, m0.at({a, b}).u_av);
        EXPECT_EQ(m.at({a, b}).components.u_s, m0.at({a, b}).components.u_s);
      }
    }
  }
}

TEST(Matrix, SymmetricScenarioIsSymmetricUnderRelabeling) {
  ConflictGeometry g;
  const PredictionParams p;
  const GameWeights w{1.0, 0.5, 0.0, 0.0};
  const VehicleState av = vehicle(-30, 10), hv = vehicle(-30, 10);
  const UtilityOptions opts{EfficiencyBranch::kCorrected, HvSafetyConvention::kSigned, -1.0};
  const UtilityMatrix m = build_matrix(av, hv, 1.0, g, w, p, opts);
  for (Strategy a : kStrategies) {
    for (Strategy b : kStrategies) {
      EXPECT_NEAR(m.at({a, b}).u_av, m.at({b, a}).u_hv, 1e-12);
    }
  }
}

TEST(Matrix, Deterministic) {
  const ConflictGeometry g;
  const UtilityMatrix a =
      build_matrix(vehicle(-33, 9), vehicle(-41, 12), 0.7, g, GameWeights{}, PredictionParams{});
  const UtilityMatrix b =
      build_matrix(vehicle(-33, 9), vehicle(-41, 12), 0.7, g, GameWeights{}, PredictionParams{});
  for (Strategy x : kStrategies) {
    for (Strategy y : kStrategies) {
      EXPECT_EQ(a.at({x, y}).u_av, b.at({x, y}).u_av);
      EXPECT_EQ(a.at({x, y}).u_hv, b.at({x, y}).u_hv);
    }
  }
}

TEST(Matrix, NoScComponentsAreAnnihilated) {
  const GameWeights w = GameWeights::nosc(GameWeights{});
  const UtilityMatrix m = build_matrix(vehicle(-35, 11), vehicle(-40, 12, 12.0), 0.9,
                                       ConflictGeometry{}, w, PredictionParams{});
  for (Strategy a : kStrategies) {
    for (Strategy b : kStrategies) {
      const MatrixEntry& e = m.at({a, b});
      EXPECT_NEAR(e.u_av, w.alpha * e.components.u_s + w.beta * e.components.u_t_av, 1e-12);
    }
  }
}

// Independent recomputation of the payoff table for a pinned state: arrival
// times by fine integration, utilities from their closed forms.
TEST(Matrix, PinnedStateMatchesIndependentRecomputation) {
  ConflictGeometry g;  // defaults: 3.5 m conflict area, 7 m intersection
  PredictionParams p;
  p.v_max_av = p.v_max_hv = 50.0 / 3.6;
  const GameWeights w{1.0, 0.5, 0.4, 0.2};
  const UtilityOptions opts{EfficiencyBranch::kCorrected, HvSafetyConvention::kSigned, -1.0};
  const double f = 0.8;
  const double d_av = 42.0, v_av = 12.0, d_hv = 47.0, v_hv = 12.5;
  const VehicleState av = vehicle(-d_av, v_av, 4.6), hv = vehicle(-d_hv, v_hv, 12.0);
  const UtilityMatrix m = build_matrix(av, hv, f, g, w, p, opts);

  for (Strategy sa : kStrategies) {
    for (Strategy sh : kStrategies) {
      const double a_av = sa == Strategy::kYield ? p.a_yield : p.a_go;
      const double a_hv = sh == Strategy::kYield ? p.a_yield : p.a_go;
      const double t_av = integrate_arrival(d_av, v_av, a_av, p.v_max_av, p.t_max);
      const double t_hv = integrate_arrival(d_hv, v_hv, a_hv, p.v_max_hv, p.t_max);
      const bool av_leads = t_av <= t_hv;
      double v_f = 0.0;
      if (av_leads) {
        integrate_arrival(1e9, v_hv, a_hv, p.v_max_hv, t_av + 1e-3, &v_f, t_av);
      } else {
        integrate_arrival(1e9, v_av, a_av, p.v_max_av, t_hv + 1e-3, &v_f, t_hv);
      }
      v_f = std::max(v_f, p.v_follower_floor);
      const double lead_len = av_leads ? 4.6 : 12.0;
      const double rsk = (3.5 + lead_len) / v_f, saf = (7.0 + lead_len) / v_f;
      const double dt = std::abs(t_av - t_hv);
      const double us = dt <= rsk ? dt / rsk - 1 : (dt < saf ? (dt - rsk) / (saf - rsk) : 1.0);
      auto eff = [](double t, double l, double vmax) {
        const double te = l / vmax;
        return t > te ? std::max(-1.0, 2.0 - t / te) : 1.0;
      };
      const double ut_av = eff(t_av, d_av, p.v_max_av);
      const double ut_hv = eff(t_hv, d_hv, p.v_max_hv);
      const double tacit = sa == sh ? 0.0 : 1.0;
      const double us_hv = us >= 0 ? std::pow(us, f) : -std::pow(-us, f);
      const double lam_hv = sh == Strategy::kYield ? w.lambda : 0.0;
      const double u_hv = w.alpha * us_hv + w.beta * ut_hv + lam_hv * f * ut_av;
      const double u_av =
          (1 - w.lambda) * (w.alpha * us + w.beta * ut_av + w.gamma * f * tacit) + w.lambda * u_hv;

      const MatrixEntry& e = m.at({sa, sh});
      EXPECT_NEAR(e.prediction.t_av, t_av, 1e-3);
      EXPECT_NEAR(e.prediction.t_hv, t_hv, 1e-3);
      EXPECT_NEAR(e.u_av, u_av, 2e-3) << index_of(sa) << index_of(sh);
      EXPECT_NEAR(e.u_hv, u_hv, 2e-3) << index_of(sa) << index_of(sh);
    }
  }
}

}  // namespace
}  // namespace scgame
