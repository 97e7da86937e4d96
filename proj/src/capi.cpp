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

#include "scgame/scgame.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "scgame/batch.hpp"
#include "scgame/bridge.hpp"
#include "scgame/calibrate.hpp"
#include "scgame/config.hpp"
#include "scgame/fixtures.hpp"
#include "scgame/sim.hpp"
#include "scgame/trace.hpp"

struct scg_config {
  scgame::ScenarioConfig cfg;
};

struct scg_episode {
  std::unique_ptr<scgame::Episode> episode;
  scgame::EpisodeRecord record;
  bool finished = false;
};

namespace {

thread_local std::string g_last_error;

constexpr const char* kVersion = "0.1.0";

scg_status fail(scg_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs `fn`, translating exceptions into status codes. Library errors map to
// `domain` (the stage the caller was in) except configuration problems, which
// are always SCG_ERR_CONFIG.
template <typename Fn>
scg_status guarded(scg_status domain, Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const scgame::ConfigError& e) {
    return fail(SCG_ERR_CONFIG, e.what());
  } catch (const scgame::CalibrationError& e) {
    return fail(SCG_ERR_CALIBRATION, e.what());
  } catch (const scgame::Error& e) {
    return fail(domain, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(SCG_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(SCG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SCG_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_string(char** out, const std::string& s) {
  if (out != nullptr) *out = dup_string(s);
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::filesystem::filesystem_error("cannot write", p, std::error_code());
  f << text;
}

void fill_result(const scgame::EpisodeRecord& r, scg_result* out) {
  if (out == nullptr) return;
  *out = scg_result{};
  out->classification = static_cast<int>(r.classification);
  out->has_arrival = r.arrival ? 1 : 0;
  out->tta = r.tta;
  if (r.arrival) {
    out->leader = r.arrival->leader == scgame::Vehicle::kAv ? SCG_LEADER_AV : SCG_LEADER_HV;
    out->f_end = r.arrival->f_theta;
    out->lag_speed = r.arrival->lag_speed;
    out->lag_distance = r.arrival->lag_distance;
  }
  out->aeb = r.aeb_fired;
  out->collision = r.collision;
  out->overspeed = r.overspeed;
  out->timeout = r.timeout;
  out->aborted = r.aborted;
  out->decel_decisions = r.decel_decisions;
  out->steps = r.samples.size();
}

std::vector<scgame::PolicyKind> parse_policies(const std::string& list) {
  std::vector<scgame::PolicyKind> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(scgame::policy_kind_from_string(item));
  }
  if (out.empty()) throw scgame::ConfigError("empty policy list");
  return out;
}

std::string batch_report(const std::vector<scgame::BatchSummary>& sums) {
  using scgame::Classification;
  using scgame::SpeedBin;
  static const Classification kClasses[] = {Classification::kDanger, Classification::kFullStop,
                                            Classification::kNormal, Classification::kFailed};
  static const SpeedBin kBins[] = {SpeedBin::kLow, SpeedBin::kLowMid, SpeedBin::kMid,
                                   SpeedBin::kHigh};
  std::ostringstream out;
  char buf[160];
  for (const scgame::BatchSummary& s : sums) {
    out << "policy " << s.policy << " (" << s.rows.size() << " episodes, " << s.errors
        << " errors)\n";
    std::snprintf(buf, sizeof buf, "  %-8s %7s %9s %7s %7s\n", "bin", "Danger", "FullStop",
                  "Normal", "Failed");
    out << buf;
    for (SpeedBin b : kBins) {
      std::snprintf(buf, sizeof buf, "  %-8s %7d %9d %7d %7d\n", scgame::to_string(b),
                    s.count(b, kClasses[0]), s.count(b, kClasses[1]), s.count(b, kClasses[2]),
                    s.count(b, kClasses[3]));
      out << buf;
    }
    for (const auto& [label, lag] : {std::pair{"AV leads", &s.av_leading},
                                     std::pair{"HV leads", &s.hv_leading}}) {
      std::snprintf(buf, sizeof buf,
                    "  %s: n=%d mean TTA %.3f s, full stops %d, lag speed %.2f m/s, "
                    "lag distance %.2f m\n",
                    label, lag->n, lag->mean_tta, lag->full_stops, lag->mean_speed,
                    lag->mean_distance);
      out << buf;
    }
  }
  if (sums.size() > 1) {
    out << "danger in Mid+High bins:";
    for (const scgame::BatchSummary& s : sums) {
      out << " " << s.policy << "="
          << s.count(SpeedBin::kMid, Classification::kDanger) +
                 s.count(SpeedBin::kHigh, Classification::kDanger);
    }
    out << "\nfull stops:";
    for (const scgame::BatchSummary& s : sums) {
      out << " " << s.policy << "=" << s.count(Classification::kFullStop);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

extern "C" {

const char* scg_version(void) { return kVersion; }

const char* scg_last_error(void) { return g_last_error.c_str(); }

const char* scg_status_name(scg_status s) {
  switch (s) {
    case SCG_OK: return "ok";
    case SCG_ERR_CONFIG: return "config error";
    case SCG_ERR_EPISODE: return "episode error";
    case SCG_ERR_FIXTURE: return "fixture failure";
    case SCG_ERR_CALIBRATION: return "calibration error";
    case SCG_ERR_IO: return "io error";
    case SCG_ERR_ARGUMENT: return "invalid argument";
    case SCG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* scg_class_name(int classification) {
  if (classification < SCG_CLASS_NORMAL || classification > SCG_CLASS_FAILED) return "unknown";
  return scgame::to_string(static_cast<scgame::Classification>(classification));
}

void scg_string_free(char* s) { std::free(s); }

scg_status scg_config_new(scg_config** out) {
  if (out == nullptr) return fail(SCG_ERR_ARGUMENT, "null output handle");
  return guarded(SCG_ERR_CONFIG, [&] {
    *out = new scg_config{};
    return SCG_OK;
  });
}

scg_status scg_config_load(const char* path, scg_config** out) {
  if (path == nullptr || out == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_CONFIG, [&] {
    *out = new scg_config{scgame::load_config(path)};
    return SCG_OK;
  });
}

scg_status scg_config_parse(const char* yaml, scg_config** out) {
  if (yaml == nullptr || out == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_CONFIG, [&] {
    *out = new scg_config{scgame::parse_config(yaml)};
    return SCG_OK;
  });
}

scg_status scg_config_clone(const scg_config* cfg, scg_config** out) {
  if (cfg == nullptr || out == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_CONFIG, [&] {
    *out = new scg_config{cfg->cfg};
    return SCG_OK;
  });
}

scg_status scg_config_set(scg_config* cfg, const char* assignment) {
  if (cfg == nullptr || assignment == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_CONFIG, [&] {
    cfg->cfg = scgame::apply_override(cfg->cfg, assignment);
    return SCG_OK;
  });
}

scg_status scg_config_serialize(const scg_config* cfg, char** out_yaml) {
  if (cfg == nullptr || out_yaml == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_CONFIG, [&] {
    set_string(out_yaml, scgame::serialize_config(cfg->cfg));
    return SCG_OK;
  });
}

scg_status scg_config_hash(const scg_config* cfg, char** out_hex) {
  if (cfg == nullptr || out_hex == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_CONFIG, [&] {
    set_string(out_hex, scgame::config_hash(cfg->cfg));
    return SCG_OK;
  });
}

void scg_config_free(scg_config* cfg) { delete cfg; }

scg_status scg_episode_new(const scg_config* cfg, scg_episode** out) {
  if (cfg == nullptr || out == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_CONFIG, [&] {
    cfg->cfg.validate();
    auto ep = std::make_unique<scg_episode>();
    ep->episode = std::make_unique<scgame::Episode>(cfg->cfg, cfg->cfg.seed);
    *out = ep.release();
    return SCG_OK;
  });
}

scg_status scg_episode_step(scg_episode* ep, int* running) {
  if (ep == nullptr) return fail(SCG_ERR_ARGUMENT, "null episode");
  return guarded(SCG_ERR_EPISODE, [&] {
    const bool more = !ep->finished && ep->episode->advance();
    if (running != nullptr) *running = more ? 1 : 0;
    return SCG_OK;
  });
}

scg_status scg_episode_set_control(scg_episode* ep, double throttle, double brake) {
  if (ep == nullptr) return fail(SCG_ERR_ARGUMENT, "null episode");
  return guarded(SCG_ERR_EPISODE, [&] {
    ep->episode->set_hv_control(throttle, brake);
    return SCG_OK;
  });
}

scg_status scg_episode_abort(scg_episode* ep) {
  if (ep == nullptr) return fail(SCG_ERR_ARGUMENT, "null episode");
  return guarded(SCG_ERR_EPISODE, [&] {
    ep->episode->abort();
    return SCG_OK;
  });
}

scg_status scg_episode_run(scg_episode* ep, scg_result* out) {
  if (ep == nullptr) return fail(SCG_ERR_ARGUMENT, "null episode");
  return guarded(SCG_ERR_EPISODE, [&] {
    if (!ep->finished) {
      ep->record = ep->episode->run();
      ep->finished = true;
    }
    fill_result(ep->record, out);
    return SCG_OK;
  });
}

namespace {

// Finishes the episode on first use of its record.
const scgame::EpisodeRecord& finished_record(scg_episode* ep) {
  if (!ep->finished) {
    ep->record = ep->episode->run();
    ep->finished = true;
  }
  return ep->record;
}

}  // namespace

scg_status scg_episode_trace(scg_episode* ep, char** out_ndjson) {
  if (ep == nullptr || out_ndjson == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_EPISODE, [&] {
    set_string(out_ndjson, scgame::trace_ndjson(finished_record(ep)));
    return SCG_OK;
  });
}

scg_status scg_episode_write_trace(scg_episode* ep, const char* path) {
  if (ep == nullptr || path == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_EPISODE, [&] {
    const scgame::EpisodeRecord& r = finished_record(ep);
    try {
      scgame::write_trace_file(path, r);
    } catch (const scgame::ConfigError& e) {
      return fail(SCG_ERR_IO, e.what());
    }
    return SCG_OK;
  });
}

scg_status scg_episode_steps_tsv(scg_episode* ep, char** out_tsv) {
  if (ep == nullptr || out_tsv == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_EPISODE, [&] {
    set_string(out_tsv, scgame::steps_tsv(finished_record(ep)));
    return SCG_OK;
  });
}

scg_status scg_episode_summary(scg_episode* ep, char** out_line) {
  if (ep == nullptr || out_line == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  return guarded(SCG_ERR_EPISODE, [&] {
    set_string(out_line, scgame::summary_text(finished_record(ep)));
    return SCG_OK;
  });
}

void scg_episode_free(scg_episode* ep) { delete ep; }

scg_status scg_batch_run(const scg_config* cfg, const char* policies, size_t n, uint64_t seed,
                         int threads, const char* out_dir, char** out_report) {
  if (cfg == nullptr || policies == nullptr) return fail(SCG_ERR_ARGUMENT, "null argument");
  if (n == 0) return fail(SCG_ERR_ARGUMENT, "batch size must be positive");
  return guarded(SCG_ERR_EPISODE, [&] {
    namespace fs = std::filesystem;
    cfg->cfg.validate();
    const std::vector<scgame::PolicyKind> kinds = parse_policies(policies);
    const std::string dir = out_dir != nullptr ? out_dir : "";
    if (!dir.empty()) fs::create_directories(dir);

    scgame::SamplerOptions opts;
    opts.rss_response = cfg->cfg.driver.rss_response;
    const std::vector<scgame::ScenarioSpec> specs = scgame::sample_scenarios(n, seed, opts);
    std::vector<scgame::BatchSummary> sums;
    for (scgame::PolicyKind k : kinds) {
      sums.push_back(scgame::batch_run(cfg->cfg, k, specs, threads, opts));
      const scgame::BatchSummary& s = sums.back();
      // Each policy's tables are written as soon as it finishes so an
      // interrupted comparison keeps the completed policies.
      if (!dir.empty()) {
        const std::string header = "scgame batch policy=" + s.policy + " n=" +
                                   std::to_string(n) + " seed=" + std::to_string(seed) +
                                   " config=" + scgame::config_hash(cfg->cfg);
        write_text(fs::path(dir) / (s.policy + ".rows.tsv"), scgame::rows_tsv(s, header));
        write_text(fs::path(dir) / (s.policy + ".table.tsv"), scgame::table_tsv(s, header));
        write_text(fs::path(dir) / (s.policy + ".lag.tsv"), scgame::lag_tsv(s, header));
      }
    }
    set_string(out_report, batch_report(sums));
    for (const scgame::BatchSummary& s : sums) {
      if (s.errors > 0) {
        return fail(SCG_ERR_EPISODE, std::to_string(s.errors) + " episode(s) failed under " +
                                         s.policy);
      }
    }
    return SCG_OK;
  });
}

scg_status scg_calibrate(const scg_config* cfg, int candidates, size_t budget, uint64_t seed,
                         int threads, const char* out_path, char** out_report) {
  if (cfg == nullptr) return fail(SCG_ERR_ARGUMENT, "null config");
  if (candidates <= 0 || budget == 0) {
    return fail(SCG_ERR_ARGUMENT, "candidates and budget must be positive");
  }
  return guarded(SCG_ERR_CALIBRATION, [&] {
    cfg->cfg.validate();
    scgame::CalibrationOptions opts;
    opts.candidates = candidates;
    opts.budget = budget;
    opts.seed = seed;
    opts.threads = threads;
    opts.policy = cfg->cfg.policy;
    opts.sampler.rss_response = cfg->cfg.driver.rss_response;
    const scgame::CalibrationResult res = scgame::calibrate_weights(cfg->cfg, opts);
    const std::string header = "scgame calibrate candidates=" + std::to_string(candidates) +
                               " budget=" + std::to_string(budget) +
                               " seed=" + std::to_string(seed) +
                               " config=" + scgame::config_hash(cfg->cfg);
    const std::string table = scgame::calibration_tsv(res, header);
    if (out_path != nullptr && *out_path != '\0') {
      const std::filesystem::path p(out_path);
      if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
      write_text(p, table);
    }
    char buf[200];
    const scgame::CandidateScore& b = res.candidates[res.best_index];
    std::snprintf(buf, sizeof buf,
                  "best candidate %zu: alpha=%.4f beta=%.4f gamma=%.4f lambda=%.4f "
                  "objective=%.4f danger=%.3f full_stop=%.3f time=%.3f\n",
                  res.best_index, res.best.alpha, res.best.beta, res.best.gamma, res.best.lambda,
                  b.objective, b.danger_rate, b.full_stop_rate, b.mean_crossing_time);
    set_string(out_report, table + buf);
    return SCG_OK;
  });
}

scg_status scg_fixtures_run(const char* dir, const char* out_dir, int regenerate,
                            char** out_report) {
  if (dir == nullptr) return fail(SCG_ERR_ARGUMENT, "null fixture directory");
  return guarded(SCG_ERR_FIXTURE, [&] {
    const std::vector<scgame::FixtureResult> res =
        scgame::run_fixtures(dir, out_dir != nullptr ? out_dir : "", regenerate != 0);
    set_string(out_report, scgame::fixtures_report(res));
    int failed = 0;
    for (const scgame::FixtureResult& r : res) failed += r.pass ? 0 : 1;
    if (failed > 0) {
      return fail(SCG_ERR_FIXTURE, std::to_string(failed) + " fixture(s) failed");
    }
    return SCG_OK;
  });
}

scg_status scg_serve(const scg_config* cfg, int port, const char* record_dir, int max_sessions,
                     double speedup) {
  if (cfg == nullptr) return fail(SCG_ERR_ARGUMENT, "null config");
  if (port < 0 || port > 65535) return fail(SCG_ERR_ARGUMENT, "port out of range");
  if (!(speedup > 0.0)) return fail(SCG_ERR_ARGUMENT, "speedup must be positive");
  return guarded(SCG_ERR_EPISODE, [&] {
    cfg->cfg.validate();
    scgame::ServeOptions opts;
    opts.port = port;
    opts.max_sessions = max_sessions;
    opts.speedup = speedup;
    opts.record_dir = record_dir != nullptr ? record_dir : "";
    opts.on_listen = [](int p) {
      std::fprintf(stderr, "listening on 127.0.0.1:%d\n", p);
      std::fflush(stderr);
    };
    scgame::serve(cfg->cfg, opts);
    return SCG_OK;
  });
}

scg_status scg_replay(const char* session_log_path, const char* trace_out, scg_result* out) {
  if (session_log_path == nullptr) return fail(SCG_ERR_ARGUMENT, "null session log path");
  return guarded(SCG_ERR_EPISODE, [&] {
    const scgame::SessionLog log = scgame::load_session_log(session_log_path);
    const scgame::EpisodeRecord r = scgame::replay_session(log);
    if (trace_out != nullptr && *trace_out != '\0') scgame::write_trace_file(trace_out, r);
    fill_result(r, out);
    return SCG_OK;
  });
}

}  // extern "C"
