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

#include "scgame/fixtures.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scgame/trace.hpp"

namespace scgame {

namespace {

constexpr double kLateHorizon = 2.5;  // s to conflict entry

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

bool read_file(const std::filesystem::path& p, std::string& out) {
  std::ifstream f(p, std::ios::binary);
  if (!f) return false;
  std::stringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + p.string() + "'");
  f << text;
}

std::vector<FixtureCheck> nosc_checks(const EpisodeRecord& r) {
  const double f = r.arrival ? r.arrival->f_theta : -1.0;
  return {{"aeb_fired", r.aeb_fired, r.aeb_fired ? "yes" : "no"},
          {"ends_in_blind_zone", r.arrival && f == 0.0, "F_end=" + fmt(f)}};
}

std::vector<FixtureCheck> rss_checks(const EpisodeRecord& r) {
  int go_ticks = 0;
  double first_yield_tte = -1.0;
  bool yield_seen = false;
  for (const StepSample& s : r.samples) {
    if (s.post_arrival || !s.active) continue;
    const bool yielding = s.aeb || (s.decision_tick && s.strategy == Strategy::kYield);
    if (yielding) {
      yield_seen = true;
      first_yield_tte = s.av.v > 0.0 ? s.av.distance_to_entry() / s.av.v : 0.0;
      break;
    }
    if (s.decision_tick) ++go_ticks;
  }
  const bool late = go_ticks > 0 && (!yield_seen || first_yield_tte <= kLateHorizon);
  return {{"classification_danger", r.classification == Classification::kDanger,
           to_string(r.classification)},
          {"notyield_until_late", late,
           std::to_string(go_ticks) + " NotYield ticks, first yield at " +
               (yield_seen ? fmt(first_yield_tte) + " s to entry" : std::string("never"))}};
}

std::vector<FixtureCheck> sc_checks(const EpisodeRecord& r) {
  const double f = r.arrival ? r.arrival->f_theta : -1.0;
  const double t = r.arrival ? r.tta : 0.0;
  return {{"decelerates_before_entry", r.decel_decisions > 0, std::to_string(r.decel_decisions)},
          {"visible_at_end", r.arrival && f >= 0.5, "F_end=" + fmt(f)},
          {"tta_above_threshold", r.arrival && t > 0.83, "TTA=" + fmt(t)},
          {"classification_normal", r.classification == Classification::kNormal,
           to_string(r.classification)}};
}

}  // namespace

std::vector<FixtureCheck> fixture_signature(const EpisodeRecord& r) {
  if (r.policy == "nosc") return nosc_checks(r);
  if (r.policy == "rss") return rss_checks(r);
  return sc_checks(r);
}

FixtureResult run_fixture(const std::string& dir, const std::string& name,
                          const std::string& out_dir, bool regenerate) {
  namespace fs = std::filesystem;
  FixtureResult res;
  res.name = name;
  const ScenarioConfig cfg = load_config((fs::path(dir) / (name + ".yaml")).string());
  res.record = run_episode(cfg);
  res.checks = fixture_signature(res.record);

  const std::string trace = trace_ndjson(res.record);
  const fs::path golden = fs::path(dir) / "golden" / (name + ".ndjson");
  if (regenerate) {
    fs::create_directories(golden.parent_path());
    write_file(golden, trace);
    res.golden_line = -1;
  } else {
    std::string expected;
    res.golden_line = read_file(golden, expected) ? first_diverging_line(expected, trace) : -2;
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / (name + ".steps.tsv"), steps_tsv(res.record));
  }

  res.pass = res.golden_line == -1;
  for (const FixtureCheck& c : res.checks) res.pass = res.pass && c.pass;
  return res;
}

std::vector<FixtureResult> run_fixtures(const std::string& dir, const std::string& out_dir,
                                        bool regenerate) {
  std::vector<FixtureResult> out;
  for (const std::string& name : kFixtureNames) {
    out.push_back(run_fixture(dir, name, out_dir, regenerate));
  }
  return out;
}

std::string fixtures_report(const std::vector<FixtureResult>& results) {
  std::ostringstream out;
  for (const FixtureResult& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << summary_text(r.record) << "\n";
    for (const FixtureCheck& c : r.checks) {
      out << "  " << (c.pass ? "ok   " : "FAIL ") << c.name << " (" << c.detail << ")\n";
    }
    if (r.golden_line == -2) {
      out << "  FAIL golden trace missing\n";
    } else if (r.golden_line >= 0) {
      // Line 0 is the header, so line n is step n - 1.
      out << "  FAIL golden trace diverges at line " << r.golden_line;
      if (r.golden_line > 0) out << " (step " << r.golden_line - 1 << ")";
      out << "\n";
    } else {
      out << "  ok   golden trace identical\n";
    }
  }
  return out.str();
}

}  // namespace scgame
