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

#include "scgame/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace scgame {

void WorldConfig::validate() const {
  if (!(lane_width_av > 0.0) || !(lane_width_hv > 0.0) || !(exit_clearance > 0.0)) {
    throw ConfigError("lane widths and exit clearance must be positive");
  }
  if (!(interaction_start > 0.0) || !(algorithm_on > 0.0)) {
    throw ConfigError("trigger distances must be positive");
  }
  if (interaction_start < algorithm_on) {
    throw ConfigError("interaction_start must not be below algorithm_on");
  }
  if (!(speed_limit_kmh > 0.0)) throw ConfigError("speed limit must be positive");
  if (!(dt > 0.0) || !(decision_period >= dt) || !(horizon > 0.0) || !(epilogue >= 0.0)) {
    throw ConfigError("invalid time stepping (dt, decision_period, horizon, epilogue)");
  }
  if (!(av_length > 0.0) || !(av_width > 0.0) || !(hv_length > 0.0) || !(hv_width > 0.0)) {
    throw ConfigError("vehicle dimensions must be positive");
  }
  if (!(av_accel_max > 0.0) || !(hv_accel_max > 0.0) || !(av_brake_max < 0.0) ||
      !(hv_brake_max < 0.0)) {
    throw ConfigError("vehicle acceleration limits must bracket zero");
  }
}

ConflictGeometry WorldConfig::conflict_geometry() const {
  ConflictGeometry g;
  g.conflict_entry_av = 0.0;
  g.conflict_exit_av = lane_width_hv;
  g.intersection_exit_av = lane_width_hv + exit_clearance;
  g.conflict_entry_hv = 0.0;
  g.conflict_exit_hv = lane_width_av;
  g.intersection_exit_hv = lane_width_av + exit_clearance;
  return g;
}

const char* to_string(DriverKind k) {
  switch (k) {
    case DriverKind::kConstantThrottle:
      return "constant_throttle";
    case DriverKind::kGameAware:
      return "game_aware";
    case DriverKind::kVisibilityYielder:
      return "visibility_yielder";
    case DriverKind::kAggressive:
      return "aggressive";
    case DriverKind::kExternal:
      return "external";
  }
  return "constant_throttle";
}

DriverKind driver_kind_from_string(const std::string& s) {
  for (DriverKind k : {DriverKind::kConstantThrottle, DriverKind::kGameAware,
                       DriverKind::kVisibilityYielder, DriverKind::kAggressive,
                       DriverKind::kExternal}) {
    if (s == to_string(k)) return k;
  }
  throw ConfigError("unknown driver model '" + s + "'");
}

void DriverModel::validate() const {
  if (kind == DriverKind::kConstantThrottle && !(a_low >= 0.0 && a_low <= a_high)) {
    throw ConfigError("constant_throttle range must satisfy 0 <= a_low <= a_high");
  }
  if (!(f_threshold >= 0.0 && f_threshold <= 1.0)) throw ConfigError("f_threshold must lie in [0,1]");
  if (!(yield_gap > 0.0)) throw ConfigError("yield_gap must be positive");
  if (!(aggressive_low >= 0.0 && aggressive_low <= aggressive_high)) {
    throw ConfigError("aggressive range must satisfy 0 <= low <= high");
  }
}

void ScenarioConfig::validate() const {
  world.validate();
  cabin.validate();
  view.validate();
  weights.validate();
  prediction.validate();
  limits.validate();
  rss.validate();
  aeb.validate();
  driver.validate();
  world.conflict_geometry().validate();
  if (driver.kind == DriverKind::kConstantThrottle && driver.a_high > world.hv_accel_max) {
    throw ConfigError("constant_throttle range exceeds the HV acceleration limit");
  }
  if (!(initial_speed_kmh > 0.0)) throw ConfigError("initial speed must be positive");
  if (!(hysteresis_margin >= 0.0)) throw ConfigError("hysteresis margin must be non-negative");
}

GamePolicyConfig ScenarioConfig::game_policy_config() const {
  GamePolicyConfig g;
  g.weights = weights;
  g.prediction = prediction;
  g.prediction.v_max_av = world.speed_limit();
  g.prediction.v_max_hv = world.speed_limit();
  g.options = utility;
  g.limits = limits;
  g.limits.a_min = std::max(limits.a_min, world.av_brake_max);
  g.limits.a_max = std::min(limits.a_max, world.av_accel_max);
  g.hysteresis = hysteresis;
  g.hysteresis_margin = hysteresis_margin;
  if (policy == PolicyKind::kNoSc) g = nosc_config(g);
  return g;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  while (begin < end && *begin == ' ') ++begin;
  if (begin < end && *begin == '+') ++begin;
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc() || res.ptr != end) throw ConfigError("invalid number for '" + key + "': " + text);
  return v;
}

// Splits "45 km/h" (or "45km/h") into value and unit.
std::pair<double, std::string> parse_quantity(const std::string& text, const std::string& key) {
  std::size_t pos = 0;
  while (pos < text.size() && !std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
  // Keep exponents such as 1e-3 with the number.
  while (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E') && pos + 1 < text.size() &&
         (std::isdigit(static_cast<unsigned char>(text[pos + 1])) || text[pos + 1] == '-' ||
          text[pos + 1] == '+')) {
    ++pos;
    while (pos < text.size() && !std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  std::string number = text.substr(0, pos);
  while (!number.empty() && (number.back() == ' ' || number.back() == '\t')) number.pop_back();
  return {parse_number(number, key), text.substr(pos)};
}

double parse_speed_kmh(const std::string& text, const std::string& key) {
  auto [v, unit] = parse_quantity(text, key);
  if (unit == "km/h" || unit == "kph") return v;
  if (unit == "m/s") return v * 3.6;
  throw ConfigError("speed '" + key + "' needs a km/h or m/s unit suffix: " + text);
}

double parse_angle_rad(const std::string& text, const std::string& key) {
  auto [v, unit] = parse_quantity(text, key);
  if (unit == "deg") return deg_to_rad(v);
  if (unit == "rad" || unit.empty()) return v;
  throw ConfigError("angle '" + key + "' needs a deg or rad unit suffix: " + text);
}

enum class Kind { kNumber, kSpeed, kAngle, kBool, kString, kUint };

struct Field {
  std::string key;
  Kind kind;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, const std::string&)> set;
};

using Section = std::pair<std::string, std::vector<Field>>;

template <typename Accessor>
Field number_field(std::string key, Accessor acc) {
  return {key, Kind::kNumber,
          [acc](const ScenarioConfig& c) { return fmt_double(acc(const_cast<ScenarioConfig&>(c))); },
          [acc, key](ScenarioConfig& c, const std::string& t) { acc(c) = parse_number(t, key); }};
}

template <typename Accessor>
Field angle_field(std::string key, Accessor acc) {
  return {key, Kind::kAngle,
          [acc](const ScenarioConfig& c) {
            return fmt_double(acc(const_cast<ScenarioConfig&>(c))) + " rad";
          },
          [acc, key](ScenarioConfig& c, const std::string& t) { acc(c) = parse_angle_rad(t, key); }};
}

template <typename Accessor>
Field speed_field(std::string key, Accessor acc) {
  return {key, Kind::kSpeed,
          [acc](const ScenarioConfig& c) {
            return fmt_double(acc(const_cast<ScenarioConfig&>(c))) + " km/h";
          },
          [acc, key](ScenarioConfig& c, const std::string& t) { acc(c) = parse_speed_kmh(t, key); }};
}

bool parse_bool(const std::string& t, const std::string& key) {
  if (t == "true" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "no" || t == "off") return false;
  throw ConfigError("invalid boolean for '" + key + "': " + t);
}

template <typename Accessor>
Field bool_field(std::string key, Accessor acc) {
  return {key, Kind::kBool,
          [acc](const ScenarioConfig& c) {
            return std::string(acc(const_cast<ScenarioConfig&>(c)) ? "true" : "false");
          },
          [acc, key](ScenarioConfig& c, const std::string& t) { acc(c) = parse_bool(t, key); }};
}

const std::vector<Section>& schema() {
  static const std::vector<Section> sections = [] {
    std::vector<Section> s;
    s.push_back({"scenario",
                 {
                     {"name", Kind::kString, [](const ScenarioConfig& c) { return c.name; },
                      [](ScenarioConfig& c, const std::string& t) { c.name = t; }},
                     {"policy", Kind::kString,
                      [](const ScenarioConfig& c) { return std::string(to_string(c.policy)); },
                      [](ScenarioConfig& c, const std::string& t) { c.policy = policy_kind_from_string(t); }},
                     {"seed", Kind::kUint, [](const ScenarioConfig& c) { return std::to_string(c.seed); },
                      [](ScenarioConfig& c, const std::string& t) {
                        std::uint64_t v = 0;
                        auto res = std::from_chars(t.data(), t.data() + t.size(), v);
                        if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
                          throw ConfigError("invalid seed: " + t);
                        }
                        c.seed = v;
                      }},
                     speed_field("initial_speed", [](ScenarioConfig& c) -> double& { return c.initial_speed_kmh; }),
                     number_field("av_offset", [](ScenarioConfig& c) -> double& { return c.av_offset; }),
                 }});
    s.push_back({"world",
                 {
                     number_field("lane_width_av", [](ScenarioConfig& c) -> double& { return c.world.lane_width_av; }),
                     number_field("lane_width_hv", [](ScenarioConfig& c) -> double& { return c.world.lane_width_hv; }),
                     number_field("exit_clearance", [](ScenarioConfig& c) -> double& { return c.world.exit_clearance; }),
                     number_field("interaction_start", [](ScenarioConfig& c) -> double& { return c.world.interaction_start; }),
                     number_field("algorithm_on", [](ScenarioConfig& c) -> double& { return c.world.algorithm_on; }),
                     speed_field("speed_limit", [](ScenarioConfig& c) -> double& { return c.world.speed_limit_kmh; }),
                     number_field("dt", [](ScenarioConfig& c) -> double& { return c.world.dt; }),
                     number_field("decision_period", [](ScenarioConfig& c) -> double& { return c.world.decision_period; }),
                     number_field("horizon", [](ScenarioConfig& c) -> double& { return c.world.horizon; }),
                     number_field("epilogue", [](ScenarioConfig& c) -> double& { return c.world.epilogue; }),
                     speed_field("overspeed_tolerance", [](ScenarioConfig& c) -> double& { return c.world.overspeed_kmh; }),
                     number_field("av_length", [](ScenarioConfig& c) -> double& { return c.world.av_length; }),
                     number_field("av_width", [](ScenarioConfig& c) -> double& { return c.world.av_width; }),
                     number_field("hv_length", [](ScenarioConfig& c) -> double& { return c.world.hv_length; }),
                     number_field("hv_width", [](ScenarioConfig& c) -> double& { return c.world.hv_width; }),
                     number_field("av_accel_max", [](ScenarioConfig& c) -> double& { return c.world.av_accel_max; }),
                     number_field("av_brake_max", [](ScenarioConfig& c) -> double& { return c.world.av_brake_max; }),
                     number_field("hv_accel_max", [](ScenarioConfig& c) -> double& { return c.world.hv_accel_max; }),
                     number_field("hv_brake_max", [](ScenarioConfig& c) -> double& { return c.world.hv_brake_max; }),
                 }});
    s.push_back({"cabin",
                 {
                     number_field("w", [](ScenarioConfig& c) -> double& { return c.cabin.w; }),
                     number_field("w_e", [](ScenarioConfig& c) -> double& { return c.cabin.w_e; }),
                     number_field("l_e", [](ScenarioConfig& c) -> double& { return c.cabin.l_e; }),
                     number_field("h_sm", [](ScenarioConfig& c) -> double& { return c.cabin.h_sm; }),
                     number_field("h_fm", [](ScenarioConfig& c) -> double& { return c.cabin.h_fm; }),
                     number_field("h_e", [](ScenarioConfig& c) -> double& { return c.cabin.h_e; }),
                     number_field("cabin_length", [](ScenarioConfig& c) -> double& { return c.cabin.cabin_length; }),
                 }});
    s.push_back({"view",
                 {
                     number_field("omega_left", [](ScenarioConfig& c) -> double& { return c.view.omega[0]; }),
                     number_field("omega_center", [](ScenarioConfig& c) -> double& { return c.view.omega[1]; }),
                     number_field("omega_right", [](ScenarioConfig& c) -> double& { return c.view.omega[2]; }),
                     number_field("xi", [](ScenarioConfig& c) -> double& { return c.view.xi; }),
                     angle_field("a_max", [](ScenarioConfig& c) -> double& { return c.view.a_max; }),
                     angle_field("a_c", [](ScenarioConfig& c) -> double& { return c.view.a_c; }),
                     angle_field("mu_left", [](ScenarioConfig& c) -> double& { return c.view.mu[0]; }),
                     angle_field("mu_center", [](ScenarioConfig& c) -> double& { return c.view.mu[1]; }),
                     angle_field("mu_right", [](ScenarioConfig& c) -> double& { return c.view.mu[2]; }),
                     number_field("p_min", [](ScenarioConfig& c) -> double& { return c.view.p_min; }),
                     angle_field("head_turn", [](ScenarioConfig& c) -> double& { return c.view.head_turn; }),
                     {"reference", Kind::kString,
                      [](const ScenarioConfig& c) {
                        return std::string(c.view.reference == ReferencePoint::kCenter ? "center" : "nearest_corner");
                      },
                      [](ScenarioConfig& c, const std::string& t) {
                        if (t == "center") {
                          c.view.reference = ReferencePoint::kCenter;
                        } else if (t == "nearest_corner") {
                          c.view.reference = ReferencePoint::kNearestCorner;
                        } else {
                          throw ConfigError("view.reference must be center or nearest_corner");
                        }
                      }},
                 }});
    s.push_back({"weights",
                 {
                     number_field("alpha", [](ScenarioConfig& c) -> double& { return c.weights.alpha; }),
                     number_field("beta", [](ScenarioConfig& c) -> double& { return c.weights.beta; }),
                     number_field("gamma", [](ScenarioConfig& c) -> double& { return c.weights.gamma; }),
                     number_field("lambda", [](ScenarioConfig& c) -> double& { return c.weights.lambda; }),
                 }});
    s.push_back({"prediction",
                 {
                     number_field("a_yield", [](ScenarioConfig& c) -> double& { return c.prediction.a_yield; }),
                     number_field("a_go", [](ScenarioConfig& c) -> double& { return c.prediction.a_go; }),
                     number_field("t_max", [](ScenarioConfig& c) -> double& { return c.prediction.t_max; }),
                     number_field("v_follower_floor", [](ScenarioConfig& c) -> double& { return c.prediction.v_follower_floor; }),
                 }});
    s.push_back({"utility",
                 {
                     {"efficiency_branch", Kind::kString,
                      [](const ScenarioConfig& c) {
                        return std::string(c.utility.efficiency_branch == EfficiencyBranch::kPrinted ? "printed" : "corrected");
                      },
                      [](ScenarioConfig& c, const std::string& t) {
                        if (t == "printed") {
                          c.utility.efficiency_branch = EfficiencyBranch::kPrinted;
                        } else if (t == "corrected") {
                          c.utility.efficiency_branch = EfficiencyBranch::kCorrected;
                        } else {
                          throw ConfigError("utility.efficiency_branch must be printed or corrected");
                        }
                      }},
                     {"hv_safety", Kind::kString,
                      [](const ScenarioConfig& c) {
                        return std::string(c.utility.hv_safety == HvSafetyConvention::kLiteral ? "literal" : "signed");
                      },
                      [](ScenarioConfig& c, const std::string& t) {
                        if (t == "literal") {
                          c.utility.hv_safety = HvSafetyConvention::kLiteral;
                        } else if (t == "signed") {
                          c.utility.hv_safety = HvSafetyConvention::kSigned;
                        } else {
                          throw ConfigError("utility.hv_safety must be literal or signed");
                        }
                      }},
                     number_field("u_t_min", [](ScenarioConfig& c) -> double& { return c.utility.u_t_min; }),
                 }});
    s.push_back({"actuation",
                 {
                     number_field("a_go_max", [](ScenarioConfig& c) -> double& { return c.limits.a_go_max; }),
                     number_field("a_yield_comf", [](ScenarioConfig& c) -> double& { return c.limits.a_yield_comf; }),
                     number_field("a_brake_strong", [](ScenarioConfig& c) -> double& { return c.limits.a_brake_strong; }),
                     number_field("a_min", [](ScenarioConfig& c) -> double& { return c.limits.a_min; }),
                     number_field("a_max", [](ScenarioConfig& c) -> double& { return c.limits.a_max; }),
                     bool_field("hysteresis", [](ScenarioConfig& c) -> bool& { return c.hysteresis; }),
                     number_field("hysteresis_margin", [](ScenarioConfig& c) -> double& { return c.hysteresis_margin; }),
                 }});
    s.push_back({"rss",
                 {
                     number_field("rho_av", [](ScenarioConfig& c) -> double& { return c.rss.rho_av; }),
                     number_field("rho_hv", [](ScenarioConfig& c) -> double& { return c.rss.rho_hv; }),
                     number_field("a_accel_max_av", [](ScenarioConfig& c) -> double& { return c.rss.a_accel_max_av; }),
                     number_field("a_accel_max_hv", [](ScenarioConfig& c) -> double& { return c.rss.a_accel_max_hv; }),
                     number_field("a_brake_min_av", [](ScenarioConfig& c) -> double& { return c.rss.a_brake_min_av; }),
                     number_field("a_brake_min_hv", [](ScenarioConfig& c) -> double& { return c.rss.a_brake_min_hv; }),
                     number_field("a_brake_max_av", [](ScenarioConfig& c) -> double& { return c.rss.a_brake_max_av; }),
                     number_field("a_brake_max_hv", [](ScenarioConfig& c) -> double& { return c.rss.a_brake_max_hv; }),
                     number_field("buffer_length", [](ScenarioConfig& c) -> double& { return c.rss.buffer_length; }),
                     number_field("deficit_scale", [](ScenarioConfig& c) -> double& { return c.rss.deficit_scale; }),
                     number_field("tracking_gain", [](ScenarioConfig& c) -> double& { return c.rss.tracking_gain; }),
                     bool_field("av_priority", [](ScenarioConfig& c) -> bool& { return c.rss.av_priority; }),
                 }});
    s.push_back({"aeb",
                 {
                     number_field("threshold", [](ScenarioConfig& c) -> double& { return c.aeb.threshold; }),
                     number_field("horizon", [](ScenarioConfig& c) -> double& { return c.aeb.horizon; }),
                     number_field("a_brake", [](ScenarioConfig& c) -> double& { return c.aeb.a_brake; }),
                 }});
    s.push_back({"driver",
                 {
                     {"model", Kind::kString,
                      [](const ScenarioConfig& c) { return std::string(to_string(c.driver.kind)); },
                      [](ScenarioConfig& c, const std::string& t) { c.driver.kind = driver_kind_from_string(t); }},
                     number_field("a_low", [](ScenarioConfig& c) -> double& { return c.driver.a_low; }),
                     number_field("a_high", [](ScenarioConfig& c) -> double& { return c.driver.a_high; }),
                     number_field("f_threshold", [](ScenarioConfig& c) -> double& { return c.driver.f_threshold; }),
                     number_field("yield_gap", [](ScenarioConfig& c) -> double& { return c.driver.yield_gap; }),
                     number_field("aggressive_low", [](ScenarioConfig& c) -> double& { return c.driver.aggressive_low; }),
                     number_field("aggressive_high", [](ScenarioConfig& c) -> double& { return c.driver.aggressive_high; }),
                     speed_field("aggressive_overshoot", [](ScenarioConfig& c) -> double& { return c.driver.aggressive_overshoot_kmh; }),
                     bool_field("rss_response", [](ScenarioConfig& c) -> bool& { return c.driver.rss_response; }),
                 }});
    s.push_back({"output",
                 {
                     {"trace", Kind::kString, [](const ScenarioConfig& c) { return c.trace_path; },
                      [](ScenarioConfig& c, const std::string& t) { c.trace_path = t; }},
                     {"dir", Kind::kString, [](const ScenarioConfig& c) { return c.out_dir; },
                      [](ScenarioConfig& c, const std::string& t) { c.out_dir = t; }},
                 }});
    return s;
  }();
  return sections;
}

const Field* find_field(const std::string& section, const std::string& key) {
  for (const auto& [name, fields] : schema()) {
    if (name != section) continue;
    for (const Field& f : fields) {
      if (f.key == key) return &f;
    }
  }
  return nullptr;
}

ScenarioConfig from_node(const YAML::Node& root) {
  ScenarioConfig cfg;
  if (!root || root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError("config root must be a mapping of sections");
  for (const auto& sec : root) {
    const std::string section = sec.first.as<std::string>();
    if (!sec.second.IsMap()) throw ConfigError("section '" + section + "' must be a mapping");
    for (const auto& kv : sec.second) {
      const std::string key = kv.first.as<std::string>();
      const Field* f = find_field(section, key);
      if (!f) throw ConfigError("unknown config key '" + section + "." + key + "'");
      if (!kv.second.IsScalar()) throw ConfigError("'" + section + "." + key + "' must be a scalar");
      f->set(cfg, kv.second.as<std::string>());
    }
  }
  return cfg;
}

}  // namespace

ScenarioConfig parse_config(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  ScenarioConfig cfg = from_node(root);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const ScenarioConfig& cfg) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  for (const auto& [name, fields] : schema()) {
    out << YAML::Key << name << YAML::Value << YAML::BeginMap;
    for (const Field& f : fields) {
      const std::string value = f.get(cfg);
      out << YAML::Key << f.key << YAML::Value;
      if (f.kind == Kind::kString) {
        out << YAML::DoubleQuoted << value;
      } else {
        out << value;
      }
    }
    out << YAML::EndMap;
  }
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ScenarioConfig apply_override(const ScenarioConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("override must look like section.key=value: " + assignment);
  }
  const std::string section = assignment.substr(0, dot);
  const std::string key = assignment.substr(dot + 1, eq - dot - 1);
  const Field* f = find_field(section, key);
  if (!f) throw ConfigError("unknown config key '" + section + "." + key + "'");
  ScenarioConfig out = cfg;
  f->set(out, assignment.substr(eq + 1));
  out.validate();
  return out;
}

}  // namespace scgame
