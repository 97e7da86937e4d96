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

#ifndef SCGAME_GAME_HPP_
#define SCGAME_GAME_HPP_

#include <vector>

#include "scgame/types.hpp"
#include "scgame/utilities.hpp"

namespace scgame {

// kOverride marks AEB actuation; kRule marks the rule-based RSS baseline.
enum class SelectionReason { kUniqueNE, kMultiNEMaxUav, kNoNEMaximin, kOverride, kRule };

const char* to_string(SelectionReason r);

// Every pure profile at which neither player strictly gains by deviating
// unilaterally. Ties keep the profile an equilibrium.
std::vector<StrategyProfile> pure_nash(const UtilityMatrix& m);

struct Selection {
  Strategy strategy = Strategy::kYield;
  // The profile the AV expects to be played: the chosen equilibrium, or for
  // maximin play the AV's row paired with its worst-case HV column.
  StrategyProfile expected;
  SelectionReason reason = SelectionReason::kUniqueNE;
};

Selection select_decision(const std::vector<StrategyProfile>& eqs, const UtilityMatrix& m);

struct ActuationLimits {
  double a_go_max = 1.5;
  double a_yield_comf = -2.0;
  double a_brake_strong = -3.0;
  double a_min = -5.0;
  double a_max = 3.5;

  void validate() const;
};

// Maps the binary decision and the AV safety utility onto a longitudinal
// acceleration: going is throttled by how safe it is, yielding brakes harder
// as safety worsens.
double action_from_decision(Strategy strategy, double u_s_av, const ActuationLimits& limits);

struct Decision {
  Strategy strategy = Strategy::kYield;
  double accel_cmd = 0.0;
  std::vector<StrategyProfile> equilibria;
  SelectionReason reason = SelectionReason::kUniqueNE;
  StrategyProfile expected;
  // Set when hysteresis kept the previous strategy over the selected one.
  bool held = false;
};

}  // namespace scgame

#endif  // SCGAME_GAME_HPP_
