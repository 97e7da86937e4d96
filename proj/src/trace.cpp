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

#include "scgame/trace.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace scgame {

namespace {

using Json = nlohmann::ordered_json;

Json state_json(const VehicleState& x) { return Json{{"s", x.s}, {"v", x.v}, {"a", x.a}}; }

std::string str(Strategy s) { return std::string(to_string(s)); }

Json components_json(const MatrixEntry& e) {
  const UtilityComponents& c = e.components;
  return Json{{"u_av", e.u_av},         {"u_hv", e.u_hv},       {"u_s", c.u_s},
              {"u_t_av", c.u_t_av},     {"u_sf_av", c.u_sf_av}, {"u_s_hv", c.u_s_hv},
              {"u_t_hv", c.u_t_hv},     {"u_altr_hv", c.u_altr_hv},
              {"delta_t", e.prediction.delta_t}, {"t_av", e.prediction.t_av},
              {"t_hv", e.prediction.t_hv}};
}

std::string line(const Json& j) { return j.dump() + "\n"; }

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string trace_header_line(const EpisodeRecord& r) {
  Json j;
  j["type"] = "header";
  j["schema"] = kTraceSchemaVersion;
  j["name"] = r.name;
  j["policy"] = r.policy;
  j["driver"] = r.driver;
  j["seed"] = r.seed;
  j["config_hash"] = r.config_hash;
  j["initial_speed_kmh"] = r.initial_speed_kmh;
  j["speed_limit_kmh"] = r.speed_limit_kmh;
  j["bin"] = to_string(r.bin);
  return line(j);
}

std::string trace_step_line(const StepSample& s) {
  Json j;
  j["type"] = "step";
  j["t"] = s.t;
  j["av"] = state_json(s.av);
  j["hv"] = state_json(s.hv);
  j["f"] = s.f_theta;
  j["region"] = to_string(s.region);
  j["active"] = s.active;
  j["tick"] = s.decision_tick;
  j["strategy"] = str(s.strategy);
  j["reason"] = to_string(s.reason);
  j["expected"] = Json::array({str(s.expected.av), str(s.expected.hv)});
  j["held"] = s.held;
  j["equilibria"] = s.equilibria;
  j["av_cmd"] = s.av_cmd;
  j["hv_cmd"] = s.hv_cmd;
  j["components"] = s.entry ? components_json(*s.entry) : Json(nullptr);
  j["aeb_margin"] = s.aeb_margin;
  j["aeb"] = s.aeb;
  j["post_arrival"] = s.post_arrival;
  return line(j);
}

std::string trace_summary_line(const EpisodeRecord& r) {
  Json j;
  j["type"] = "summary";
  j["classification"] = to_string(r.classification);
  if (r.arrival) {
    j["tta"] = r.tta;
    j["arrival"] = Json{{"t", r.arrival->t},
                        {"leader", to_string(r.arrival->leader)},
                        {"lag_distance", r.arrival->lag_distance},
                        {"lag_speed", r.arrival->lag_speed},
                        {"f", r.arrival->f_theta},
                        {"region", to_string(r.arrival->region)}};
  } else {
    j["tta"] = nullptr;
    j["arrival"] = nullptr;
  }
  j["aeb"] = r.aeb_fired;
  j["post_arrival_aeb"] = r.post_arrival_aeb;
  j["collision"] = r.collision;
  j["overspeed"] = r.overspeed;
  j["timeout"] = r.timeout;
  j["aborted"] = r.aborted;
  j["decel_decisions"] = r.decel_decisions;
  j["steps"] = r.samples.size();
  return line(j);
}

void write_trace(std::ostream& out, const EpisodeRecord& r) {
  out << trace_header_line(r);
  for (const StepSample& s : r.samples) out << trace_step_line(s);
  out << trace_summary_line(r);
}

std::string trace_ndjson(const EpisodeRecord& r) {
  std::ostringstream out;
  write_trace(out, r);
  return out.str();
}

void write_trace_file(const std::string& path, const EpisodeRecord& r) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write trace file '" + path + "'");
  write_trace(f, r);
  if (!f) throw ConfigError("failed writing trace file '" + path + "'");
}

std::string steps_tsv(const EpisodeRecord& r) {
  std::ostringstream out;
  out << "# " << r.name << " policy=" << r.policy << " seed=" << r.seed
      << " config=" << r.config_hash << "\n";
  out << "t\tav_s\tav_v_kmh\tav_a\thv_s\thv_v_kmh\thv_a\tf\tstrategy\taeb\n";
  for (const StepSample& s : r.samples) {
    out << fixed(s.t, 2) << '\t' << fixed(s.av.s, 4) << '\t' << fixed(s.av.v * 3.6, 4) << '\t'
        << fixed(s.av.a, 4) << '\t' << fixed(s.hv.s, 4) << '\t' << fixed(s.hv.v * 3.6, 4) << '\t'
        << fixed(s.hv.a, 4) << '\t' << fixed(s.f_theta, 4) << '\t'
        << (s.active ? str(s.strategy) : std::string("-")) << '\t' << (s.aeb ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string summary_text(const EpisodeRecord& r) {
  std::ostringstream out;
  out << r.name << " policy=" << r.policy << " seed=" << r.seed << " class="
      << to_string(r.classification);
  if (r.arrival) {
    out << " tta=" << fixed(r.tta, 3) << " leader=" << to_string(r.arrival->leader)
        << " f_end=" << fixed(r.arrival->f_theta, 3);
  } else {
    out << " tta=none";
  }
  out << " aeb=" << (r.aeb_fired ? "yes" : "no") << " collision=" << (r.collision ? "yes" : "no");
  return out.str();
}

long first_diverging_line(const std::string& a, const std::string& b) {
  std::istringstream ia(a), ib(b);
  std::string la, lb;
  long n = 0;
  while (true) {
    const bool ga = static_cast<bool>(std::getline(ia, la));
    const bool gb = static_cast<bool>(std::getline(ib, lb));
    if (!ga && !gb) return -1;
    if (ga != gb || la != lb) return n;
    ++n;
  }
}

}  // namespace scgame
