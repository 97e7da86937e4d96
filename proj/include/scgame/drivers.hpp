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

#ifndef SCGAME_DRIVERS_HPP_
#define SCGAME_DRIVERS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <random>

#include "scgame/config.hpp"
#include "scgame/policy.hpp"
#include "scgame/types.hpp"
#include "scgame/utilities.hpp"

namespace scgame {

// splitmix64 finalizer, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform double in [lo, hi) from the top 53 bits of one engine draw, so the
// value sequence does not depend on the standard library's distributions.
double uniform(std::mt19937_64& rng, double lo, double hi);

// What the HV driver may look at on each step.
struct DriverInput {
  double t = 0.0;
  VehicleState hv;
  VehicleState av;
  bool av_present = true;
  double f_theta = 0.0;
  ConflictGeometry geom;
  double speed_limit = 12.5;  // m/s
  // The AV's current decision and the profile it expects, once it has decided.
  std::optional<Strategy> av_intent;
  std::optional<StrategyProfile> av_expected;
};

class HvDriver {
 public:
  virtual ~HvDriver() = default;
  // Commanded HV acceleration (m/s^2) before vehicle saturation.
  virtual double accel(const DriverInput& in) = 0;
};

class ConstantThrottleDriver : public HvDriver {
 public:
  explicit ConstantThrottleDriver(double a) : a_(a) {}
  double accel(const DriverInput&) override { return a_; }

 private:
  double a_;
};

class AggressiveDriver : public HvDriver {
 public:
  AggressiveDriver(double a, double overshoot) : a_(a), overshoot_(overshoot) {}
  double accel(const DriverInput& in) override;

 private:
  double a_;
  double overshoot_;  // m/s above the limit at which throttle is released
};

// Yields only while it perceives the AV (F at or above threshold) and the
// constant-speed entry gap is short; has no memory between steps.
class VisibilityYielderDriver : public HvDriver {
 public:
  VisibilityYielderDriver(double cruise, double f_threshold, double yield_gap, double brake_bound)
      : cruise_(cruise), f_threshold_(f_threshold), yield_gap_(yield_gap), brake_bound_(brake_bound) {}
  double accel(const DriverInput& in) override;

 private:
  double cruise_;
  double f_threshold_;
  double yield_gap_;
  double brake_bound_;
};

// Plays the HV strategy of the profile the AV expects; without an announced
// profile it solves the SC game itself.
class GameAwareDriver : public HvDriver {
 public:
  GameAwareDriver(double cruise, GamePolicyConfig game, double brake_bound)
      : cruise_(cruise), game_(std::move(game)), brake_bound_(brake_bound) {}
  double accel(const DriverInput& in) override;

 private:
  double cruise_;
  GamePolicyConfig game_;
  double brake_bound_;
};

// Human pedals: last control held until replaced.
class ExternalDriver : public HvDriver {
 public:
  ExternalDriver(double a_max, double a_brake) : a_max_(a_max), a_brake_(a_brake) {}
  void set_control(double throttle, double brake);
  double throttle() const { return throttle_; }
  double brake() const { return brake_; }
  double accel(const DriverInput&) override { return throttle_ * a_max_ + brake_ * a_brake_; }

 private:
  double a_max_;
  double a_brake_;
  double throttle_ = 0.0;
  double brake_ = 0.0;
};

// Gives way to an AV announcing NotYield while a stop before the conflict area
// is still feasible within the HV's braking limit.
class RssResponseDriver : public HvDriver {
 public:
  RssResponseDriver(std::unique_ptr<HvDriver> inner, double brake_limit)
      : inner_(std::move(inner)), brake_limit_(brake_limit) {}
  double accel(const DriverInput& in) override;

 private:
  std::unique_ptr<HvDriver> inner_;
  double brake_limit_;
};

// Deceleration that stops a vehicle at speed v within `gap` metres.
double stopping_accel(double v, double gap);

std::unique_ptr<HvDriver> make_driver(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace scgame

#endif  // SCGAME_DRIVERS_HPP_
