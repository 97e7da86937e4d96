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

#include "scgame/game.hpp"

#include <algorithm>

namespace scgame {

const char* to_string(SelectionReason r) {
  switch (r) {
    case SelectionReason::kUniqueNE:
      return "UniqueNE";
    case SelectionReason::kMultiNEMaxUav:
      return "MultiNE_MaxUav";
    case SelectionReason::kNoNEMaximin:
      return "NoNE_Maximin";
    case SelectionReason::kOverride:
      return "Override";
    case SelectionReason::kRule:
      return "Rule";
  }
  return "UniqueNE";
}

namespace {

Strategy other(Strategy s) {
  return s == Strategy::kYield ? Strategy::kNotYield : Strategy::kYield;
}

}  // namespace

std::vector<StrategyProfile> pure_nash(const UtilityMatrix& m) {
  std::vector<StrategyProfile> out;
  for (Strategy sa : kStrategies) {
    for (Strategy sh : kStrategies) {
      const StrategyProfile p{sa, sh};
      const bool av_stays = m.at(p).u_av >= m.at({other(sa), sh}).u_av;
      const bool hv_stays = m.at(p).u_hv >= m.at({sa, other(sh)}).u_hv;
      if (av_stays && hv_stays) out.push_back(p);
    }
  }
  return out;
}

Selection select_decision(const std::vector<StrategyProfile>& eqs, const UtilityMatrix& m) {
  Selection sel;
  if (eqs.size() == 1) {
    sel.strategy = eqs.front().av;
    sel.expected = eqs.front();
    sel.reason = SelectionReason::kUniqueNE;
    return sel;
  }
  if (!eqs.empty()) {
    // Highest U_AV wins; on equal U_AV the Yield equilibrium is kept because
    // candidates are scanned Yield-first and only a strict gain replaces one.
    std::vector<StrategyProfile> ordered = eqs;
    std::stable_sort(ordered.begin(), ordered.end(), [](StrategyProfile a, StrategyProfile b) {
      return index_of(a.av) < index_of(b.av);
    });
    StrategyProfile best = ordered.front();
    for (const StrategyProfile& p : ordered) {
      if (m.at(p).u_av > m.at(best).u_av) best = p;
    }
    sel.strategy = best.av;
    sel.expected = best;
    sel.reason = SelectionReason::kMultiNEMaxUav;
    return sel;
  }

  // Maximin over the AV's own rows.
  bool first = true;
  double best_floor = 0.0;
  for (Strategy sa : kStrategies) {
    StrategyProfile worst{sa, Strategy::kYield};
    if (m.at({sa, Strategy::kNotYield}).u_av < m.at(worst).u_av) worst.hv = Strategy::kNotYield;
    const double floor = m.at(worst).u_av;
    if (first || floor > best_floor) {
      best_floor = floor;
      sel.strategy = sa;
      sel.expected = worst;
      first = false;
    }
  }
  sel.reason = SelectionReason::kNoNEMaximin;
  return sel;
}

void ActuationLimits::validate() const {
  if (!(a_min < 0.0) || !(a_max > 0.0)) throw ConfigError("actuation limits must bracket zero");
  if (!(a_go_max >= 0.0)) throw ConfigError("a_go_max must be non-negative");
  if (!(a_yield_comf <= 0.0) || !(a_brake_strong <= a_yield_comf)) {
    throw ConfigError("require a_brake_strong <= a_yield_comf <= 0");
  }
}

double action_from_decision(Strategy strategy, double u_s_av, const ActuationLimits& limits) {
  double a = 0.0;
  if (strategy == Strategy::kNotYield) {
    a = limits.a_go_max * std::clamp(u_s_av, 0.0, 1.0);
  } else {
    a = limits.a_yield_comf +
        (limits.a_brake_strong - limits.a_yield_comf) * std::clamp(-u_s_av, 0.0, 1.0);
  }
  return std::clamp(a, limits.a_min, limits.a_max);
}

}  // namespace scgame
