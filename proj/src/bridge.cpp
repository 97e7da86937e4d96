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

#include "scgame/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "scgame/trace.hpp"

namespace scgame {

namespace {

using Json = nlohmann::ordered_json;

double clamp_input(double x) {
  if (!std::isfinite(x)) return 0.0;
  return std::clamp(x, 0.0, 1.0);
}

Json envelope(const char* kind, const std::string& session_id, Json payload) {
  Json j;
  j["kind"] = kind;
  j["session_id"] = session_id;
  j["payload"] = std::move(payload);
  return j;
}

Json body_json(const VehicleState& x, const PlanarBody& b) {
  return Json{{"s", x.s},
              {"v", x.v},
              {"a", x.a},
              {"x", b.center.x},
              {"y", b.center.y},
              {"heading", b.center.heading},
              {"length", b.length},
              {"width", b.width}};
}

const char* speed_label(double kmh) {
  if (kmh <= 20.0) return "Lowspd";
  if (kmh <= 45.0) return "Midspd";
  return "Highspd";
}

}  // namespace

std::vector<BridgeScenario> default_scenarios() {
  std::vector<BridgeScenario> out;
  for (PolicyKind p : {PolicyKind::kSc, PolicyKind::kNoSc, PolicyKind::kRss}) {
    for (double limit : {20.0, 45.0, 70.0}) {
      BridgeScenario s;
      s.policy = p;
      s.speed_limit_kmh = limit;
      s.id = std::string(to_string(p)) + "-" + std::to_string(static_cast<int>(limit));
      s.label = std::string(to_string(p)) + " / " + speed_label(limit);
      out.push_back(s);
    }
  }
  return out;
}

ScenarioConfig scenario_config(const ScenarioConfig& base, const BridgeScenario& sc) {
  ScenarioConfig c = base;
  c.name = sc.id;
  c.policy = sc.policy;
  c.world.speed_limit_kmh = sc.speed_limit_kmh;
  c.initial_speed_kmh = sc.speed_limit_kmh;
  c.driver.kind = DriverKind::kExternal;
  c.driver.rss_response = false;
  c.validate();
  return c;
}

std::string session_log_ndjson(const SessionLog& log) {
  std::string out;
  Json head;
  head["type"] = "session";
  head["schema"] = kProtocolVersion;
  head["session_id"] = log.session_id;
  head["scenario"] = log.scenario_id;
  head["seed"] = log.seed;
  head["config"] = log.config_yaml;
  out += head.dump() + "\n";
  for (const ControlRecord& c : log.controls) {
    Json j;
    j["type"] = "control";
    j["step"] = c.step;
    j["throttle"] = c.throttle;
    j["brake"] = c.brake;
    j["timestamp"] = c.timestamp;
    out += j.dump() + "\n";
  }
  Json end;
  end["type"] = "end";
  end["steps"] = log.steps;
  end["aborted"] = log.aborted;
  out += end.dump() + "\n";
  return out;
}

SessionLog parse_session_log(const std::string& text) {
  SessionLog log;
  std::istringstream in(text);
  std::string line;
  bool have_head = false, have_end = false;
  long n = 0;
  try {
    while (std::getline(in, line)) {
      ++n;
      if (line.empty()) continue;
      const Json j = Json::parse(line);
      const std::string type = j.at("type").get<std::string>();
      if (type == "session") {
        log.session_id = j.at("session_id").get<std::string>();
        log.scenario_id = j.at("scenario").get<std::string>();
        log.seed = j.at("seed").get<std::uint64_t>();
        log.config_yaml = j.at("config").get<std::string>();
        have_head = true;
      } else if (type == "control") {
        ControlRecord c;
        c.step = j.at("step").get<long>();
        c.throttle = j.at("throttle").get<double>();
        c.brake = j.at("brake").get<double>();
        c.timestamp = j.at("timestamp").get<double>();
        log.controls.push_back(c);
      } else if (type == "end") {
        log.steps = j.at("steps").get<long>();
        log.aborted = j.at("aborted").get<bool>();
        have_end = true;
      } else {
        throw ConfigError("unknown record type '" + type + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("session log line " + std::to_string(n) + ": " + e.what());
  }
  if (!have_head) throw ConfigError("session log has no session header");
  if (!have_end) {
    // Truncated log: treat as aborted after the last recorded control.
    log.aborted = true;
    log.steps = log.controls.empty() ? 0 : log.controls.back().step;
  }
  return log;
}

SessionLog load_session_log(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read session log '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_session_log(ss.str());
}

EpisodeRecord replay_session(const SessionLog& log) {
  const ScenarioConfig cfg = parse_config(log.config_yaml);
  Episode ep(cfg, log.seed);
  std::size_t next = 0;
  while (!ep.done()) {
    if (log.aborted && ep.step_index() >= log.steps) {
      ep.abort();
      break;
    }
    while (next < log.controls.size() && log.controls[next].step <= ep.step_index()) {
      ep.set_hv_control(log.controls[next].throttle, log.controls[next].brake);
      ++next;
    }
    ep.advance();
  }
  return ep.finish();
}

Session::Session(ScenarioConfig base, std::string session_id,
                 std::vector<BridgeScenario> scenarios, double tick_hz)
    : base_(std::move(base)), session_id_(std::move(session_id)), scenarios_(std::move(scenarios)) {
  if (!(tick_hz > 0.0)) throw ConfigError("tick rate must be positive");
  steps_per_tick_ = std::max(1L, std::lround(1.0 / (tick_hz * base_.world.dt)));
}

std::string Session::error_line(const std::string& code, const std::string& message) const {
  return envelope("error", session_id_, Json{{"code", code}, {"message", message}}).dump();
}

std::string Session::state_line() const {
  const StepSample s = episode_->snapshot();
  const ScenarioConfig& cfg = episode_->config();
  const WorldPoses p = world_poses(cfg.world, s.av, s.hv);
  Json polygon = Json::array();
  for (const Point2& q : footprint_in_world(episode_->blind_zone(), p.hv_front)) {
    polygon.push_back(Json::array({q.x, q.y}));
  }
  Json payload;
  payload["t"] = s.t;
  payload["step"] = episode_->step_index();
  payload["av"] = body_json(s.av, p.av_body);
  payload["hv"] = body_json(s.hv, p.hv_body);
  payload["f"] = s.f_theta;
  payload["region"] = to_string(s.region);
  payload["blind_zone"] = std::move(polygon);
  payload["decision"] = Json{{"active", s.active},
                             {"strategy", std::string(to_string(s.strategy))},
                             {"reason", to_string(s.reason)}};
  payload["aeb"] = s.aeb;
  payload["countdown"] = Json{{"hv_to_entry", s.hv.distance_to_entry()},
                              {"av_to_entry", s.av.distance_to_entry()},
                              {"interaction_start", cfg.world.interaction_start},
                              {"algorithm_on", cfg.world.algorithm_on}};
  payload["speed_limit_kmh"] = cfg.world.speed_limit_kmh;
  return envelope("state", session_id_, std::move(payload)).dump();
}

std::string Session::end_line(const EpisodeRecord& r) const {
  Json summary;
  summary["scenario"] = r.name;
  summary["policy"] = r.policy;
  summary["seed"] = r.seed;
  summary["leader"] = r.arrival ? Json(to_string(r.arrival->leader)) : Json(nullptr);
  summary["aeb"] = r.aeb_fired;
  summary["collision"] = r.collision;
  summary["overspeed"] = r.overspeed;
  summary["aborted"] = r.aborted;
  summary["text"] = summary_text(r);
  Json payload;
  payload["tta"] = r.arrival ? Json(r.tta) : Json(nullptr);
  payload["classification"] = to_string(r.classification);
  payload["summary"] = std::move(summary);
  return envelope("episode_end", session_id_, std::move(payload)).dump();
}

std::vector<std::string> Session::handle(const std::string& line) {
  Json msg;
  try {
    msg = Json::parse(line);
  } catch (const nlohmann::json::exception&) {
    return {error_line("bad_json", "message is not valid JSON")};
  }
  if (!msg.is_object() || !msg.contains("kind") || !msg["kind"].is_string()) {
    return {error_line("bad_message", "message needs a string 'kind'")};
  }
  const std::string kind = msg["kind"].get<std::string>();
  const Json payload = msg.contains("payload") ? msg["payload"] : Json::object();

  if (kind == "hello") {
    greeted_ = true;
    Json hp{{"version", kProtocolVersion}, {"server", "scgame"}};
    Json list = Json::array();
    for (const BridgeScenario& s : scenarios_) {
      list.push_back(Json{{"id", s.id},
                          {"label", s.label},
                          {"policy", to_string(s.policy)},
                          {"speed_limit_kmh", s.speed_limit_kmh}});
    }
    return {envelope("hello", session_id_, std::move(hp)).dump(),
            envelope("scenario_list", session_id_, Json{{"scenarios", std::move(list)}}).dump()};
  }
  if (!greeted_) return {error_line("not_greeted", "send hello first")};

  if (kind == "scenario_list") {
    Json list = Json::array();
    for (const BridgeScenario& s : scenarios_) {
      list.push_back(Json{{"id", s.id},
                          {"label", s.label},
                          {"policy", to_string(s.policy)},
                          {"speed_limit_kmh", s.speed_limit_kmh}});
    }
    return {envelope("scenario_list", session_id_, Json{{"scenarios", std::move(list)}}).dump()};
  }
  if (kind == "start") {
    if (running()) return {error_line("already_running", "an episode is in progress")};
    if (!payload.is_object() || !payload.contains("scenario") || !payload["scenario"].is_string()) {
      return {error_line("bad_message", "start needs payload.scenario")};
    }
    const std::string id = payload["scenario"].get<std::string>();
    auto it = std::find_if(scenarios_.begin(), scenarios_.end(),
                           [&](const BridgeScenario& s) { return s.id == id; });
    if (it == scenarios_.end()) return {error_line("unknown_scenario", "no scenario '" + id + "'")};
    std::uint64_t seed = base_.seed;
    if (payload.contains("seed")) {
      if (!payload["seed"].is_number_unsigned()) {
        return {error_line("bad_message", "seed must be a non-negative integer")};
      }
      seed = payload["seed"].get<std::uint64_t>();
    }
    ScenarioConfig cfg;
    try {
      cfg = scenario_config(base_, *it);
      cfg.seed = seed;
      episode_ = std::make_unique<Episode>(cfg, seed);
    } catch (const Error& e) {
      return {error_line("config", e.what())};
    }
    log_ = SessionLog{};
    log_.session_id = session_id_;
    log_.scenario_id = id;
    log_.seed = seed;
    log_.config_yaml = serialize_config(cfg);
    pending_.reset();
    return {state_line()};
  }
  if (kind == "control") {
    if (!running()) return {error_line("not_running", "no episode in progress")};
    if (!payload.is_object()) return {error_line("bad_message", "control needs a payload")};
    auto num = [&](const char* key) {
      return payload.contains(key) && payload[key].is_number() ? payload[key].get<double>() : 0.0;
    };
    ControlRecord c;
    c.throttle = clamp_input(num("throttle"));
    c.brake = clamp_input(num("brake"));
    c.timestamp = num("timestamp");
    pending_ = c;
    return {};
  }
  if (kind == "state" || kind == "episode_end" || kind == "error") {
    return {error_line("bad_direction", "'" + kind + "' is sent by the server only")};
  }
  return {error_line("unknown_kind", "unknown message kind '" + kind + "'")};
}

std::vector<std::string> Session::tick() {
  if (!running()) return {};
  if (pending_) {
    pending_->step = episode_->step_index();
    episode_->set_hv_control(pending_->throttle, pending_->brake);
    log_.controls.push_back(*pending_);
    pending_.reset();
  }
  try {
    for (long i = 0; i < steps_per_tick_ && episode_->advance(); ++i) {
    }
  } catch (const Error& e) {
    std::vector<std::string> out{error_line("episode", e.what())};
    close_episode(true);
    return out;
  }
  std::vector<std::string> out{state_line()};
  if (episode_->done()) {
    const EpisodeRecord r = episode_->finish();
    out.push_back(end_line(r));
    close_episode(false);
  }
  return out;
}

void Session::close_episode(bool aborted) {
  if (!episode_) return;
  if (aborted) episode_->abort();
  log_.steps = episode_->step_index();
  log_.aborted = aborted;
  finished_.push_back({log_, episode_->finish()});
  episode_.reset();
}

void Session::disconnect() { close_episode(true); }

std::vector<Session::Finished> Session::take_finished() {
  std::vector<Finished> out;
  out.swap(finished_);
  return out;
}

}  // namespace scgame
