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

#ifndef SCGAME_BRIDGE_HPP_
#define SCGAME_BRIDGE_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "scgame/config.hpp"
#include "scgame/sim.hpp"

namespace scgame {

inline constexpr int kProtocolVersion = 1;

// A selectable interactive scenario: one AV policy at one speed-limit preset.
struct BridgeScenario {
  std::string id;
  std::string label;
  PolicyKind policy = PolicyKind::kSc;
  double speed_limit_kmh = 45.0;
};

// Three policies times the 20/45/70 km/h presets.
std::vector<BridgeScenario> default_scenarios();

// The HV is the external (human) driver; both vehicles start at the limit.
ScenarioConfig scenario_config(const ScenarioConfig& base, const BridgeScenario& sc);

struct ControlRecord {
  long step = 0;  // simulation step at which the input took effect
  double throttle = 0.0;
  double brake = 0.0;
  double timestamp = 0.0;  // client clock, informational
};

// Everything needed to reproduce a live episode offline.
struct SessionLog {
  std::string session_id;
  std::string scenario_id;
  std::uint64_t seed = 0;
  std::string config_yaml;
  std::vector<ControlRecord> controls;
  long steps = 0;
  bool aborted = false;
};

std::string session_log_ndjson(const SessionLog& log);
SessionLog parse_session_log(const std::string& text);  // throws ConfigError
SessionLog load_session_log(const std::string& path);

// Re-runs the episode headless, applying each control at its recorded step.
EpisodeRecord replay_session(const SessionLog& log);

// Protocol state machine for one client connection, independent of the
// transport. Lines in and out are single JSON objects without the newline.
class Session {
 public:
  Session(ScenarioConfig base, std::string session_id, std::vector<BridgeScenario> scenarios,
          double tick_hz = 20.0);

  // Replies to one client message (possibly none for a control, whose
  // continuation is the next state broadcast).
  std::vector<std::string> handle(const std::string& line);

  // Advances one broadcast tick while an episode runs: applies the latest
  // control, steps the simulation, returns a state line and, at the end, the
  // episode_end line.
  std::vector<std::string> tick();

  bool running() const { return episode_ != nullptr; }
  const std::string& id() const { return session_id_; }

  // Marks a running episode aborted (client went away).
  void disconnect();

  struct Finished {
    SessionLog log;
    EpisodeRecord record;
  };
  std::vector<Finished> take_finished();

 private:
  std::string state_line() const;
  std::string end_line(const EpisodeRecord& r) const;
  std::string error_line(const std::string& code, const std::string& message) const;
  void close_episode(bool aborted);

  ScenarioConfig base_;
  std::string session_id_;
  std::vector<BridgeScenario> scenarios_;
  long steps_per_tick_ = 1;
  bool greeted_ = false;

  std::unique_ptr<Episode> episode_;
  SessionLog log_;
  std::optional<ControlRecord> pending_;
  std::vector<Finished> finished_;
};

struct ServeOptions {
  int port = 8765;
  double tick_hz = 20.0;
  // Wall-clock acceleration; 1 is real time. Tests run faster than real.
  double speedup = 1.0;
  int max_sessions = 0;  // 0 = serve forever
  std::string record_dir;
  std::vector<BridgeScenario> scenarios = default_scenarios();
  std::function<void(int port)> on_listen;
};

// Blocking NDJSON-over-TCP server on 127.0.0.1; one client at a time,
// sessions served one after another.
void serve(const ScenarioConfig& base, const ServeOptions& opts);

}  // namespace scgame

#endif  // SCGAME_BRIDGE_HPP_
