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

#ifndef SCGAME_POLICY_HPP_
#define SCGAME_POLICY_HPP_

#include <functional>
#include <memory>
#include <optional>

#include "scgame/baselines.hpp"
#include "scgame/game.hpp"
#include "scgame/utilities.hpp"

namespace scgame {

enum class PolicyKind { kSc, kNoSc, kRss };

const char* to_string(PolicyKind k);
PolicyKind policy_kind_from_string(const std::string& s);  // throws ConfigError

struct PolicyContext {
  VehicleState av;
  VehicleState hv;
  double f_theta = 1.0;  // measured visibility of the AV
  ConflictGeometry geom;
};

struct PolicyOutput {
  Decision decision;
  std::optional<UtilityMatrix> matrix;
  double f_used = 0.0;  // visibility fed into the payoff table
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual PolicyOutput decide(const PolicyContext& ctx) = 0;
};

struct GamePolicyConfig {
  GameWeights weights;
  PredictionParams prediction;
  UtilityOptions options;
  ActuationLimits limits;
  bool hysteresis = true;
  double hysteresis_margin = 0.02;
  // Speed-tracking gain capping acceleration at v_max while going (1/s).
  double governor_gain = 1.0;
  // When false the payoff table is built as if the HV always perceives the AV
  // (f = 1), which makes the decision independent of the visibility model.
  bool visibility_aware = true;
};

// The game-theoretic pipeline: payoff table, pure equilibria, selection,
// hysteresis and acceleration mapping.
class GamePolicy : public Policy {
 public:
  explicit GamePolicy(GamePolicyConfig cfg) : cfg_(std::move(cfg)) {}

  PolicyOutput decide(const PolicyContext& ctx) override;

  const GamePolicyConfig& config() const { return cfg_; }

 private:
  GamePolicyConfig cfg_;
  std::optional<Strategy> incumbent_;
};

// SC preset with social fitness and reciprocity switched off.
GamePolicyConfig nosc_config(GamePolicyConfig sc);

class RssPolicy : public Policy {
 public:
  RssPolicy(RssParams p, double v_max) : params_(p), v_max_(v_max) {}

  PolicyOutput decide(const PolicyContext& ctx) override;

 private:
  RssParams params_;
  double v_max_;
  RssState state_;
};

// Adapter for scripted policies in tests and tools.
class FunctionPolicy : public Policy {
 public:
  explicit FunctionPolicy(std::function<Decision(const PolicyContext&)> fn) : fn_(std::move(fn)) {}

  PolicyOutput decide(const PolicyContext& ctx) override { return {fn_(ctx), std::nullopt, 0.0}; }

 private:
  std::function<Decision(const PolicyContext&)> fn_;
};

}  // namespace scgame

#endif  // SCGAME_POLICY_HPP_
