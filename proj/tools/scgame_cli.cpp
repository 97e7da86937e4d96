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

// Command-line front end. Uses only the C interface in scgame/scgame.h.
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "scgame/scgame.h"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kEpisodeError = 2, kFixtureFailure = 3 };

int exit_code(scg_status s) {
  switch (s) {
    case SCG_OK: return kOk;
    case SCG_ERR_CONFIG:
    case SCG_ERR_ARGUMENT:
    case SCG_ERR_IO: return kConfigError;
    case SCG_ERR_FIXTURE: return kFixtureFailure;
    default: return kEpisodeError;
  }
}

int report(scg_status s, const char* what) {
  if (s != SCG_OK) {
    std::fprintf(stderr, "scgame %s: %s: %s\n", what, scg_status_name(s), scg_last_error());
  }
  return exit_code(s);
}

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string policy;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--config", c.config, "scenario YAML file (defaults built in)");
  cmd->add_option("--set", c.overrides, "override a config key, e.g. --set world.dt=0.02");
  cmd->add_option_function<std::uint64_t>(
      "--seed",
      [&c](const std::uint64_t& v) {
        c.seed = v;
        c.seed_set = true;
      },
      "random seed");
}

// Builds the config from --config, --set, --seed and --policy.
scg_status make_config(const Common& c, scg_config** out) {
  scg_status s = c.config.empty() ? scg_config_new(out) : scg_config_load(c.config.c_str(), out);
  if (s != SCG_OK) return s;
  std::vector<std::string> sets = c.overrides;
  if (c.seed_set) sets.push_back("scenario.seed=" + std::to_string(c.seed));
  if (!c.policy.empty()) sets.push_back("scenario.policy=" + c.policy);
  for (const std::string& a : sets) {
    s = scg_config_set(*out, a.c_str());
    if (s != SCG_OK) {
      scg_config_free(*out);
      *out = nullptr;
      return s;
    }
  }
  return SCG_OK;
}

void print_and_free(char* text, std::FILE* to = stdout) {
  if (text != nullptr) {
    std::fputs(text, to);
    scg_string_free(text);
  }
}

int cmd_run(const Common& c, const std::string& out, const std::string& tsv,
            const std::string& replay) {
  if (!replay.empty()) {
    scg_result r;
    const scg_status s = scg_replay(replay.c_str(), out.c_str(), &r);
    if (s != SCG_OK) return report(s, "run");
    std::printf("replayed %s: %s, TTA %.3f s, %zu steps%s\n", replay.c_str(),
                scg_class_name(r.classification), r.tta, r.steps, r.aborted ? " (aborted)" : "");
    return kOk;
  }
  scg_config* cfg = nullptr;
  scg_status s = make_config(c, &cfg);
  if (s != SCG_OK) return report(s, "run");
  scg_episode* ep = nullptr;
  s = scg_episode_new(cfg, &ep);
  scg_config_free(cfg);
  if (s != SCG_OK) return report(s, "run");
  scg_result r;
  s = scg_episode_run(ep, &r);
  if (s == SCG_OK && !out.empty()) s = scg_episode_write_trace(ep, out.c_str());
  if (s == SCG_OK && !tsv.empty()) {
    char* table = nullptr;
    s = scg_episode_steps_tsv(ep, &table);
    if (s == SCG_OK) {
      std::FILE* f = std::fopen(tsv.c_str(), "wb");
      if (f == nullptr) {
        scg_string_free(table);
        scg_episode_free(ep);
        std::fprintf(stderr, "scgame run: cannot write '%s'\n", tsv.c_str());
        return kConfigError;
      }
      print_and_free(table, f);
      std::fclose(f);
    }
  }
  if (s == SCG_OK) {
    char* line = nullptr;
    s = scg_episode_summary(ep, &line);
    print_and_free(line);
    std::fputc('\n', stdout);
  }
  scg_episode_free(ep);
  return report(s, "run");
}

int cmd_batch(const Common& c, std::size_t n, bool compare, int threads, const std::string& out) {
  scg_config* cfg = nullptr;
  Common base = c;
  base.policy.clear();
  scg_status s = make_config(base, &cfg);
  if (s != SCG_OK) return report(s, "batch");
  const std::string policies = compare ? "sc,nosc,rss" : (c.policy.empty() ? "sc" : c.policy);
  char* text = nullptr;
  s = scg_batch_run(cfg, policies.c_str(), n, c.seed, threads, out.c_str(), &text);
  scg_config_free(cfg);
  print_and_free(text);
  return report(s, "batch");
}

int cmd_calibrate(const Common& c, std::size_t n, int candidates, int threads,
                  const std::string& out) {
  scg_config* cfg = nullptr;
  scg_status s = make_config(c, &cfg);
  if (s != SCG_OK) return report(s, "calibrate");
  char* text = nullptr;
  s = scg_calibrate(cfg, candidates, n, c.seed_set ? c.seed : 42, threads, out.c_str(), &text);
  scg_config_free(cfg);
  print_and_free(text);
  return report(s, "calibrate");
}

int cmd_fixtures(const std::string& dir, const std::string& out, bool regenerate) {
  char* text = nullptr;
  const scg_status s = scg_fixtures_run(dir.c_str(), out.c_str(), regenerate ? 1 : 0, &text);
  print_and_free(text);
  return report(s, "fixtures");
}

int cmd_serve(const Common& c, int port, const std::string& out, int max_sessions,
              double speedup) {
  scg_config* cfg = nullptr;
  scg_status s = make_config(c, &cfg);
  if (s != SCG_OK) return report(s, "serve");
  s = scg_serve(cfg, port, out.c_str(), max_sessions, speedup);
  scg_config_free(cfg);
  return report(s, "serve");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visibility-aware intersection game simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", scg_version());

  Common common;
  std::string out;
  std::size_t n = 200;
  int threads = 0;

  CLI::App* run = app.add_subcommand("run", "simulate one episode");
  add_common(run, common);
  run->add_option("--policy", common.policy, "sc, nosc or rss");
  run->add_option("--out", out, "write the NDJSON trace here");
  std::string tsv;
  run->add_option("--tsv", tsv, "write the per-step table here");
  std::string replay;
  run->add_option("--replay", replay, "re-run a recorded interactive session log");

  CLI::App* batch = app.add_subcommand("batch", "run sampled scenarios and aggregate");
  add_common(batch, common);
  batch->add_option("--policy", common.policy, "sc, nosc or rss (comma list allowed)");
  batch->add_option("--n", n, "scenarios per policy")->check(CLI::PositiveNumber);
  bool compare = false;
  batch->add_flag("--compare", compare, "run sc, nosc and rss on the same scenarios");
  batch->add_option("--threads", threads, "worker threads (0 = hardware)");
  batch->add_option("--out", out, "directory for the TSV tables");

  CLI::App* calibrate = app.add_subcommand("calibrate", "random search over the game weights");
  add_common(calibrate, common);
  calibrate->add_option("--policy", common.policy, "policy to score");
  std::size_t budget = 40;
  calibrate->add_option("--n", budget, "episodes per candidate")->check(CLI::PositiveNumber);
  int candidates = 16;
  calibrate->add_option("--candidates", candidates, "number of weight samples")
      ->check(CLI::PositiveNumber);
  calibrate->add_option("--threads", threads, "worker threads (0 = hardware)");
  calibrate->add_option("--out", out, "write the results table here");

  CLI::App* fixtures = app.add_subcommand("fixtures", "check the pinned reference cases");
  std::string fixture_dir = "fixtures";
  fixtures->add_option("--config", fixture_dir, "fixture directory");
  fixtures->add_option("--out", out, "directory for per-step tables");
  bool regenerate = false;
  fixtures->add_flag("--regenerate", regenerate, "rewrite the golden traces");

  CLI::App* serve = app.add_subcommand("serve", "interactive session server");
  add_common(serve, common);
  int port = 8765;
  serve->add_option("--port", port, "TCP port on 127.0.0.1 (0 picks one)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--out", out, "directory for session logs and traces");
  int max_sessions = 0;
  serve->add_option("--max-sessions", max_sessions, "exit after this many sessions (0 = never)");
  double speedup = 1.0;
  serve->add_option("--speedup", speedup, "wall-clock acceleration")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  if (*run) return cmd_run(common, out, tsv, replay);
  if (*batch) return cmd_batch(common, n, compare, threads, out);
  if (*calibrate) return cmd_calibrate(common, budget, candidates, threads, out);
  if (*fixtures) return cmd_fixtures(fixture_dir, out, regenerate);
  if (*serve) return cmd_serve(common, port, out, max_sessions, speedup);
  return kConfigError;
}
