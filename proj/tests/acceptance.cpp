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

// Acceptance runner: prints one PASS/FAIL line per top-level criterion.
//
// Exit status is 0 when the set of failing criteria equals the set named with
// --expect-fail (empty by default), so a known, documented failure keeps
// reporting FAIL without breaking the test run, and an unexpected pass or
// failure is still an error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "scgame/baselines.hpp"
#include "scgame/batch.hpp"
#include "scgame/config.hpp"
#include "scgame/drivers.hpp"
#include "scgame/fixtures.hpp"
#include "scgame/game.hpp"
#include "scgame/sim.hpp"
#include "scgame/trace.hpp"
#include "scgame/utilities.hpp"
#include "scgame/visibility.hpp"

namespace scgame {
namespace {

const std::string kSource = SCGAME_SOURCE_DIR;
constexpr std::uint64_t kBatchSeed = 0;
constexpr std::size_t kBatchSize = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failure notes; the first few are kept for the report line.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  Outcome outcome(const std::string& summary) const {
    Outcome o;
    o.pass = failures_ == 0;
    o.detail = summary;
    if (!o.pass) o.detail += " | " + std::to_string(failures_) + " failed: " + notes_;
    return o;
  }

 private:
  int failures_ = 0;
  std::string notes_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScenarioConfig base_config() { return load_config(kSource + "/configs/base.yaml"); }

// ---------------------------------------------------------------- visibility

Outcome visibility_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  Checker c;
  ViewModel vm;
  for (int d = 0; d < 3; ++d) {
    const auto dir = static_cast<HeadDirection>(d);
    for (double sgn : {-1.0, 1.0}) {
      const double edge = vm.mu[d] + sgn * vm.a_max / 2;
      c.expect(std::abs(observation_probability(edge, dir, vm) - vm.p_min) <= 1e-12,
               "peripheral boundary");
      const double central = vm.mu[d] + sgn * vm.a_c / 2;
      c.expect(std::abs(observation_probability(central, dir, vm) - vm.xi) <= 1e-12,
               "central edge");
    }
  }
  ViewModel dim = vm;
  dim.xi = 0.6;
  c.expect(std::abs(observation_probability(dim.a_c / 2, HeadDirection::kCenter, dim) - 0.6) <=
               1e-12,
           "central edge with xi 0.6");

  // Symmetry about each head direction and monotone falloff with offset.
  const int n = 10000;
  for (int d = 0; d < 3; ++d) {
    const auto dir = static_cast<HeadDirection>(d);
    double prev = 2.0;
    for (int i = 0; i <= n; ++i) {
      const double off = std::numbers::pi * i / n;
      const double plus = observation_probability(vm.mu[d] + off, dir, vm);
      const double minus = observation_probability(vm.mu[d] - off, dir, vm);
      c.expect(std::abs(plus - minus) <= 1e-12, "symmetry");
      c.expect(plus <= prev + 1e-15, "monotonicity");
      prev = plus;
    }
  }
  // Mixed probability stays in [0, 1], is zero in the blind zone and is
  // mirror symmetric once the head directions and weights are mirrored.
  ViewModel sym = vm;
  sym.omega = {0.3, 0.4, 0.3};
  for (int i = 0; i <= n; ++i) {
    const double th = -std::numbers::pi + 2 * std::numbers::pi * i / n;
    RelativePose p;
    p.theta = th;
    p.region = Region::kFrontDirectField;
    const double f = visibility_probability(p, vm);
    c.expect(f >= 0.0 && f <= 1.0, "F bounds");
    RelativePose q = p;
    q.theta = -th;
    c.expect(std::abs(visibility_probability(p, sym) - visibility_probability(q, sym)) <= 1e-12,
             "F symmetry");
    p.region = Region::kBlindZone;
    c.expect(visibility_probability(p, vm) == 0.0, "blind zone");
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 1.0, "runtime " + fmt(secs) + " s");
  return c.outcome("boundary=p_min, edge=xi, 10001-point sweeps, " + fmt(secs) + " s");
}

// ------------------------------------------------------------------- safety

Outcome safety_endpoints() {
  Checker c;
  const std::pair<double, double> cases[] = {{0.4, 1.1}, {1.0, 2.5}, {0.83, 0.84}, {2.0, 7.5}};
  for (const auto& [rsk, saf] : cases) {
    c.expect(std::abs(safety_core(0.0, rsk, saf) + 1.0) <= 1e-12, "u_s(0) = -1");
    c.expect(std::abs(safety_core(rsk, rsk, saf)) <= 1e-12, "u_s(rsk) = 0");
    c.expect(std::abs(safety_core(saf, rsk, saf) - 1.0) <= 1e-12, "u_s(saf) = 1");
    // Both one-sided neighbours stay within slope * eps of the joint value.
    const double slope = std::max(1.0 / rsk, 1.0 / (saf - rsk));
    const double eps = 1e-13;
    for (double j : {rsk, saf}) {
      const double at = safety_core(j, rsk, saf);
      for (double x : {j - eps, j + eps}) {
        c.expect(std::abs(safety_core(x, rsk, saf) - at) <= 1e-12 + slope * eps,
                 "continuity at joint " + fmt(j));
      }
    }
    c.expect(safety_core(saf + 10.0, rsk, saf) == 1.0, "saturated beyond safe gap");
  }
  return c.outcome("endpoints and joints on 4 threshold pairs, tol 1e-12");
}

// --------------------------------------------------------------------- Nash

Outcome nash_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> coarse(-1, 1);
  int mismatches = 0;
  for (int k = 0; k < 1000; ++k) {
    UtilityMatrix m;
    for (auto& row : m.entries) {
      for (auto& e : row) {
        e.u_av = k % 4 == 0 ? coarse(rng) : u(rng);
        e.u_hv = k % 4 == 0 ? coarse(rng) : u(rng);
      }
    }
    std::vector<StrategyProfile> brute;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const bool av_best = m.entries[i][j].u_av >= m.entries[1 - i][j].u_av;
        const bool hv_best = m.entries[i][j].u_hv >= m.entries[i][1 - j].u_hv;
        if (av_best && hv_best) brute.push_back({kStrategies[i], kStrategies[j]});
      }
    }
    if (pure_nash(m) != brute) ++mismatches;
  }
  const double secs = seconds_since(t0);
  Checker c;
  c.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  c.expect(secs < 1.0, "runtime " + fmt(secs) + " s");
  return c.outcome("1000 matrices, " + std::to_string(mismatches) + " mismatches, " + fmt(secs) +
                   " s");
}

// --------------------------------------------------------- noSC reduction

std::string decision_trace(const EpisodeRecord& r) {
  std::ostringstream out;
  out.precision(17);
  for (const StepSample& s : r.samples) {
    if (!s.decision_tick) continue;
    out << s.t << ' ' << to_string(s.strategy) << ' ' << to_string(s.reason) << ' '
        << s.equilibria << ' ' << s.held << ' ' << s.av_cmd << ' ' << s.av.s << ' ' << s.av.v
        << '\n';
  }
  return out.str();
}

Outcome nosc_reduction() {
  struct Point {
    double xi;
    std::array<double, 3> omega;
  };
  const Point sweep[] = {{1.0, {0.0, 0.17, 0.83}},
                         {0.8, {1.0 / 3, 1.0 / 3, 1.0 / 3}},
                         {0.6, {0.5, 0.25, 0.25}},
                         {0.4, {0.1, 0.8, 0.1}},
                         {0.2, {0.0, 0.0, 1.0}}};
  Checker c;
  int compared = 0;
  for (const std::string& name : kFixtureNames) {
    ScenarioConfig cfg = load_config(kSource + "/fixtures/" + name + ".yaml");
    cfg.policy = PolicyKind::kNoSc;
    std::string reference;
    std::set<double> f_values;
    for (const Point& p : sweep) {
      ScenarioConfig v = cfg;
      v.view.xi = p.xi;
      v.view.omega = p.omega;
      const EpisodeRecord r = run_episode(v);
      const std::string trace = decision_trace(r);
      if (r.arrival) f_values.insert(r.arrival->f_theta);
      if (reference.empty()) {
        reference = trace;
        c.expect(!trace.empty(), name + ": no decisions");
      } else {
        ++compared;
        c.expect(trace == reference, name + ": decisions differ at xi " + fmt(p.xi));
      }
    }
  }
  return c.outcome(std::to_string(compared) + " sweep points x 3 fixtures matched the reference");
}

// -------------------------------------------------------- full-stop sentinel

// Brakes firmly to rest well before the conflict area and waits there.
std::unique_ptr<Policy> stop_short() {
  return std::make_unique<FunctionPolicy>([](const PolicyContext& ctx) {
    Decision d;
    d.strategy = Strategy::kYield;
    d.accel_cmd = ctx.av.v > 0.0 ? -3.0 : 0.0;
    return d;
  });
}

Outcome full_stop_sentinel(const std::vector<std::vector<EpisodeRecord>>& batches) {
  Checker c;
  int constructed = 0;
  for (double kmh : {25.0, 40.0, 55.0}) {
    ScenarioConfig cfg = base_config();
    cfg.initial_speed_kmh = kmh;
    cfg.world.speed_limit_kmh = kmh;
    Episode ep(cfg, 1, stop_short(), std::make_unique<ConstantThrottleDriver>(0.1));
    const EpisodeRecord r = ep.run();
    ++constructed;
    c.expect(r.arrival && r.arrival->lag_speed == 0.0, "constructed lag not stopped");
    c.expect(r.tta == -1.0, "constructed TTA " + fmt(r.tta));
    c.expect(r.classification == Classification::kFullStop,
             std::string("constructed class ") + to_string(r.classification));
  }
  int stopped = 0;
  for (const auto& records : batches) {
    for (const EpisodeRecord& r : records) {
      if (!r.arrival || r.arrival->lag_speed != 0.0) continue;
      ++stopped;
      c.expect(r.tta == -1.0, "batch TTA " + fmt(r.tta));
      c.expect(r.classification == Classification::kFullStop,
               std::string("batch class ") + to_string(r.classification));
    }
  }
  return c.outcome(std::to_string(constructed) + " constructed, " + std::to_string(stopped) +
                   " stopped-lag batch episodes");
}

// ------------------------------------------------------------ danger margin

// The AV leads by `margin` seconds at 20 m/s, fast enough that the AEB
// cannot stop it before the conflict, so the outcome is classified on AEB.
EpisodeRecord margin_episode(double margin) {
  ScenarioConfig cfg = base_config();
  const double v = 20.0;
  cfg.initial_speed_kmh = v * 3.6;
  cfg.world.speed_limit_kmh = v * 3.6;
  cfg.av_offset = -margin * v;
  auto hold = std::make_unique<FunctionPolicy>([](const PolicyContext&) {
    Decision d;
    d.strategy = Strategy::kNotYield;
    d.accel_cmd = 0.0;
    return d;
  });
  Episode ep(cfg, 1, std::move(hold), std::make_unique<ConstantThrottleDriver>(0.0));
  return ep.run();
}

Outcome danger_threshold() {
  Checker c;
  const EpisodeRecord lo = margin_episode(0.82);
  const EpisodeRecord hi = margin_episode(0.84);
  double online = -1.0;
  for (const StepSample& s : lo.samples) {
    if (s.aeb) break;
    online = s.aeb_margin;
  }
  c.expect(std::abs(online - 0.82) < 1e-9, "online margin " + fmt(online));
  c.expect(lo.aeb_fired, "0.82 s: AEB did not fire");
  c.expect(lo.classification == Classification::kDanger,
           std::string("0.82 s: class ") + to_string(lo.classification));
  c.expect(!hi.aeb_fired, "0.84 s: AEB fired");
  c.expect(hi.classification == Classification::kNormal,
           std::string("0.84 s: class ") + to_string(hi.classification));
  return c.outcome(std::string("0.82 s -> ") + to_string(lo.classification) + ", 0.84 s -> " +
                   to_string(hi.classification));
}

// ----------------------------------------------------------------- fixtures

Outcome fixture_signatures() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto results = run_fixtures(kSource + "/fixtures", "", false);
  const double secs = seconds_since(t0);
  Checker c;
  std::string summary;
  for (const FixtureResult& r : results) {
    for (const FixtureCheck& k : r.checks) c.expect(k.pass, r.name + "." + k.name + " " + k.detail);
    if (!summary.empty()) summary += ", ";
    summary += r.name + " " + to_string(r.record.classification);
    if (r.record.arrival) {
      summary += " F=" + fmt(r.record.arrival->f_theta) + " TTA=" + fmt(r.record.tta);
    }
  }
  c.expect(results.size() == 3, "expected 3 fixtures");
  c.expect(secs < 5.0, "runtime " + fmt(secs) + " s");
  return c.outcome(summary + ", " + fmt(secs) + " s");
}

// ------------------------------------------------------- directional batch

int mid_high_danger(const BatchSummary& s) {
  return s.count(SpeedBin::kMid, Classification::kDanger) +
         s.count(SpeedBin::kHigh, Classification::kDanger);
}

Outcome directional_batch(const BatchSummary& sc, const BatchSummary& nosc,
                          const BatchSummary& rss, double secs) {
  Checker c;
  const int d_sc = mid_high_danger(sc), d_nosc = mid_high_danger(nosc), d_rss = mid_high_danger(rss);
  const int f_sc = sc.count(Classification::kFullStop);
  const int f_nosc = nosc.count(Classification::kFullStop);
  const int f_rss = rss.count(Classification::kFullStop);
  c.expect(d_sc <= d_nosc, "SC danger > noSC danger");
  c.expect(d_sc <= d_rss, "SC danger > RSS danger");
  c.expect(f_rss > f_sc && f_rss > f_nosc, "RSS full stops not strictly greatest");
  c.expect(sc.errors + nosc.errors + rss.errors == 0, "episode errors");
  c.expect(secs < 60.0, "runtime " + fmt(secs) + " s");
  return c.outcome("Mid+High danger sc=" + std::to_string(d_sc) + " nosc=" +
                   std::to_string(d_nosc) + " rss=" + std::to_string(d_rss) +
                   "; full stops sc=" + std::to_string(f_sc) + " nosc=" + std::to_string(f_nosc) +
                   " rss=" + std::to_string(f_rss) + "; " + fmt(secs) + " s");
}

// -------------------------------------------------------------- determinism

Outcome determinism(const ScenarioConfig& base, const std::vector<ScenarioSpec>& specs) {
  Checker c;
  for (const std::string& name : kFixtureNames) {
    const ScenarioConfig cfg = load_config(kSource + "/fixtures/" + name + ".yaml");
    const EpisodeRecord a = run_episode(cfg), b = run_episode(cfg);
    c.expect(trace_ndjson(a) == trace_ndjson(b), name + " trace differs");
    c.expect(summary_text(a) == summary_text(b), name + " summary differs");
  }
  const std::vector<ScenarioSpec> sub(specs.begin(), specs.begin() + 40);
  for (PolicyKind p : {PolicyKind::kSc, PolicyKind::kNoSc, PolicyKind::kRss}) {
    const BatchSummary serial = batch_run(base, p, sub, 1);
    const BatchSummary again = batch_run(base, p, sub, 1);
    const BatchSummary parallel = batch_run(base, p, sub, 4);
    c.expect(rows_tsv(serial, "") == rows_tsv(again, ""), "repeat batch differs");
    c.expect(rows_tsv(serial, "") == rows_tsv(parallel, ""), "parallel rows differ");
    c.expect(table_tsv(serial, "") == table_tsv(parallel, ""), "parallel table differs");
    c.expect(lag_tsv(serial, "") == lag_tsv(parallel, ""), "parallel lag table differs");
  }
  const std::vector<ScenarioSpec> resampled = sample_scenarios(specs.size(), kBatchSeed);
  bool same = resampled.size() == specs.size();
  for (std::size_t i = 0; same && i < specs.size(); ++i) {
    same = resampled[i].seed == specs[i].seed && resampled[i].speed_kmh == specs[i].speed_kmh &&
           resampled[i].driver == specs[i].driver && resampled[i].av_offset == specs[i].av_offset;
  }
  c.expect(same, "scenario sampling differs");
  return c.outcome("3 fixtures x 2 runs; 40-scenario batch x 3 policies serial/repeat/4 threads");
}

// ------------------------------------------------------------- RSS no-blame

Outcome rss_no_blame(const ScenarioConfig& base) {
  SamplerOptions opts;
  opts.rss_response = true;
  // The aggressive model overshoots the limit and ignores the AV.
  opts.driver_weights[static_cast<int>(DriverKind::kAggressive)] = 0.0;
  const std::vector<ScenarioSpec> specs = sample_scenarios(kBatchSize, kBatchSeed, opts);
  Checker c;
  int collisions = 0, errors = 0;
  for (const ScenarioSpec& spec : specs) c.expect(spec.driver != DriverKind::kAggressive, "aggressive sampled");
  const BatchSummary s = batch_run(base, PolicyKind::kRss, specs, 0, opts);
  for (const EpisodeRow& r : s.rows) {
    collisions += r.collision;
    errors += !r.ok;
  }
  c.expect(collisions == 0, std::to_string(collisions) + " overlaps");
  c.expect(errors == 0, std::to_string(errors) + " episode errors");
  return c.outcome(std::to_string(specs.size()) + " episodes, " + std::to_string(collisions) +
                   " footprint overlaps");
}

std::vector<EpisodeRecord> records_for(const ScenarioConfig& base, PolicyKind p,
                                       const std::vector<ScenarioSpec>& specs) {
  ScenarioConfig cfg = base;
  cfg.policy = p;
  std::vector<EpisodeRecord> out;
  out.reserve(specs.size());
  for (const ScenarioSpec& s : specs) out.push_back(run_episode(apply_spec(cfg, s)));
  return out;
}

int run(const std::set<std::string>& expected_failures) {
  struct Line {
    std::string name;
    Outcome outcome;
  };
  std::vector<Line> lines;
  auto record = [&](const std::string& name, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    lines.push_back({name, o});
  };

  const ScenarioConfig base = base_config();
  const std::vector<ScenarioSpec> specs = sample_scenarios(kBatchSize, kBatchSeed);

  record("visibility_exactness", visibility_exactness);
  record("safety_endpoints", safety_endpoints);
  record("nash_oracle", nash_oracle);
  record("nosc_reduction", nosc_reduction);
  record("full_stop_sentinel", [&] {
    std::vector<std::vector<EpisodeRecord>> batches;
    for (PolicyKind p : {PolicyKind::kSc, PolicyKind::kNoSc, PolicyKind::kRss}) {
      batches.push_back(records_for(base, p, specs));
    }
    return full_stop_sentinel(batches);
  });
  record("danger_threshold", danger_threshold);
  record("fixture_signatures", fixture_signatures);
  record("directional_batch", [&] {
    const auto t0 = std::chrono::steady_clock::now();
    const BatchSummary sc = batch_run(base, PolicyKind::kSc, specs, 0);
    const BatchSummary nosc = batch_run(base, PolicyKind::kNoSc, specs, 0);
    const BatchSummary rss = batch_run(base, PolicyKind::kRss, specs, 0);
    return directional_batch(sc, nosc, rss, seconds_since(t0));
  });
  record("determinism", [&] { return determinism(base, specs); });
  record("rss_no_blame", [&] { return rss_no_blame(base); });

  std::set<std::string> failed;
  for (const Line& l : lines) {
    if (!l.outcome.pass) failed.insert(l.name);
  }
  int passed = static_cast<int>(lines.size() - failed.size());
  std::printf("%d/%zu criteria passed\n", passed, lines.size());
  if (failed == expected_failures) {
    for (const std::string& name : expected_failures) {
      std::printf("known failure: %s (documented in README)\n", name.c_str());
    }
    return 0;
  }
  for (const std::string& name : failed) {
    if (!expected_failures.count(name)) std::printf("unexpected failure: %s\n", name.c_str());
  }
  for (const std::string& name : expected_failures) {
    if (!failed.count(name)) std::printf("expected failure now passes: %s\n", name.c_str());
  }
  return 1;
}

}  // namespace
}  // namespace scgame

int main(int argc, char** argv) {
  std::set<std::string> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--expect-fail" && i + 1 < argc) {
      expected.insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--expect-fail NAME]...\n", argv[0]);
      return 2;
    }
  }
  return scgame::run(expected);
}
