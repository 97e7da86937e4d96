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

#include "scgame/policy.hpp"

#include <algorithm>

namespace scgame {

const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::kSc:
      return "sc";
    case PolicyKind::kNoSc:
      return "nosc";
    case PolicyKind::kRss:
      return "rss";
  }
  return "sc";
}

PolicyKind policy_kind_from_string(const std::string& s) {
  if (s == "sc") return PolicyKind::kSc;
  if (s == "nosc") return PolicyKind::kNoSc;
  if (s == "rss") return PolicyKind::kRss;
  throw ConfigError("unknown policy '" + s + "' (expected sc, nosc or rss)");
}

PolicyOutput GamePolicy::decide(const PolicyContext& ctx) {
  PolicyOutput out;
  out.f_used = cfg_.visibility_aware ? ctx.f_theta : 1.0;
  out.matrix = build_matrix(ctx.av, ctx.hv, out.f_used, ctx.geom, cfg_.weights, cfg_.prediction,
                            cfg_.options);
  const UtilityMatrix& m = *out.matrix;

  Decision& d = out.decision;
  d.equilibria = pure_nash(m);
  const Selection sel = select_decision(d.equilibria, m);
  d.strategy = sel.strategy;
  d.expected = sel.expected;
  d.reason = sel.reason;

  if (cfg_.hysteresis && incumbent_ && *incumbent_ != sel.strategy) {
    const StrategyProfile keep{*incumbent_, sel.expected.hv};
    if (m.at(sel.expected).u_av - m.at(keep).u_av <= cfg_.hysteresis_margin) {
      d.strategy = *incumbent_;
      d.expected = keep;
      d.held = true;
    }
  }
  incumbent_ = d.strategy;

  double a = action_from_decision(d.strategy, m.at(d.expected).components.u_s, cfg_.limits);
  if (d.strategy == Strategy::kNotYield) {
    a = std::min(a, cfg_.governor_gain * (cfg_.prediction.v_max_av - ctx.av.v));
  }
  d.accel_cmd = std::clamp(a, cfg_.limits.a_min, cfg_.limits.a_max);
  return out;
}

GamePolicyConfig nosc_config(GamePolicyConfig sc) {
  sc.weights = GameWeights::nosc(sc.weights);
  sc.visibility_aware = false;
  return sc;
}

PolicyOutput RssPolicy::decide(const PolicyContext& ctx) {
  PolicyOutput out;
  out.decision = rss_policy(ctx.av, ctx.hv, ctx.geom, params_, v_max_, state_);
  out.f_used = ctx.f_theta;
  return out;
}

}  // namespace scgame
