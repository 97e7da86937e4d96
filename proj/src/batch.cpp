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

#include "scgame/batch.hpp"

#include <atomic>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>

#include "scgame/drivers.hpp"

namespace scgame {

namespace {

constexpr DriverKind kSampledDrivers[4] = {DriverKind::kConstantThrottle, DriverKind::kGameAware,
                                           DriverKind::kVisibilityYielder, DriverKind::kAggressive};

constexpr Classification kClasses[kNumClasses] = {Classification::kDanger,
                                                  Classification::kFullStop,
                                                  Classification::kNormal, Classification::kFailed};

int class_index(Classification c) {
  for (int i = 0; i < kNumClasses; ++i) {
    if (kClasses[i] == c) return i;
  }
  return 0;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<ScenarioSpec> sample_scenarios(std::size_t n, std::uint64_t seed,
                                           const SamplerOptions& opts) {
  static constexpr double kLo[kNumBins] = {10.0, 30.0, 40.0, 50.0};
  static constexpr double kHi[kNumBins] = {30.0, 40.0, 50.0, 70.0};
  static constexpr double kLimit[kNumBins] = {20.0, 45.0, 45.0, 70.0};
  double total = 0.0;
  for (double w : opts.driver_weights) total += w;
  if (!(total > 0.0)) throw ConfigError("driver weights must not all be zero");

  std::mt19937_64 rng(mix_seed(seed, 0x73616d70ULL));
  std::vector<ScenarioSpec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ScenarioSpec s;
    s.index = i;
    s.seed = mix_seed(seed, i);
    const int b = static_cast<int>(i % kNumBins);
    s.bin = static_cast<SpeedBin>(b);
    s.speed_kmh = uniform(rng, kLo[b], kHi[b]);
    s.speed_limit_kmh = kLimit[b];
    s.av_offset = uniform(rng, -opts.av_offset_range, opts.av_offset_range);
    double pick = uniform(rng, 0.0, total);
    s.driver = kSampledDrivers[3];
    for (int k = 0; k < 4; ++k) {
      if (pick < opts.driver_weights[k]) {
        s.driver = kSampledDrivers[k];
        break;
      }
      pick -= opts.driver_weights[k];
    }
    out.push_back(s);
  }
  return out;
}

ScenarioConfig apply_spec(const ScenarioConfig& base, const ScenarioSpec& spec,
                          const SamplerOptions& opts) {
  ScenarioConfig c = base;
  c.seed = spec.seed;
  c.initial_speed_kmh = spec.speed_kmh;
  c.world.speed_limit_kmh = spec.speed_limit_kmh;
  c.av_offset = spec.av_offset;
  c.driver.kind = spec.driver;
  c.driver.rss_response = opts.rss_response;
  c.name = base.name + "#" + std::to_string(spec.index);
  return c;
}

EpisodeRow run_row(const ScenarioConfig& base, const ScenarioSpec& spec, const SamplerOptions& opts) {
  EpisodeRow row;
  row.spec = spec;
  row.policy = to_string(base.policy);
  try {
    const ScenarioConfig cfg = apply_spec(base, spec, opts);
    const EpisodeRecord r = run_episode(cfg);
    row.classification = r.classification;
    row.aeb = r.aeb_fired;
    row.collision = r.collision;
    if (r.arrival) {
      row.tta = r.tta;
      row.leader = r.arrival->leader;
      row.lag_speed = r.arrival->lag_speed;
      row.lag_distance = r.arrival->lag_distance;
      row.f_end = r.arrival->f_theta;
    }
  } catch (const Error& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

int BatchSummary::count(Classification c) const {
  int n = 0;
  for (const auto& bin : counts) n += bin[class_index(c)];
  return n;
}

int BatchSummary::count(SpeedBin b, Classification c) const {
  if (b == SpeedBin::kNone) return 0;
  return counts[static_cast<int>(b)][class_index(c)];
}

void summarize(BatchSummary& s) {
  s.counts = {};
  s.errors = 0;
  s.av_leading = {};
  s.hv_leading = {};
  int tta_n[2] = {0, 0};
  for (const EpisodeRow& r : s.rows) {
    if (!r.ok) {
      ++s.errors;
      continue;
    }
    if (r.spec.bin != SpeedBin::kNone) {
      ++s.counts[static_cast<int>(r.spec.bin)][class_index(r.classification)];
    }
    if (r.classification == Classification::kFailed) continue;
    const int k = r.leader == Vehicle::kAv ? 0 : 1;
    LagStats& st = k == 0 ? s.av_leading : s.hv_leading;
    ++st.n;
    st.mean_speed += r.lag_speed;
    st.mean_distance += r.lag_distance;
    if (r.tta == -1.0) {
      ++st.full_stops;
    } else {
      st.mean_tta += r.tta;
      ++tta_n[k];
    }
  }
  for (int k = 0; k < 2; ++k) {
    LagStats& st = k == 0 ? s.av_leading : s.hv_leading;
    if (st.n > 0) {
      st.mean_speed /= st.n;
      st.mean_distance /= st.n;
    }
    if (tta_n[k] > 0) st.mean_tta /= tta_n[k];
  }
}

BatchSummary batch_run(const ScenarioConfig& base, PolicyKind policy,
                       const std::vector<ScenarioSpec>& specs, int threads,
                       const SamplerOptions& opts) {
  ScenarioConfig cfg = base;
  cfg.policy = policy;
  BatchSummary s;
  s.policy = to_string(policy);
  s.rows.resize(specs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < specs.size(); i = next.fetch_add(1)) {
      s.rows[i] = run_row(cfg, specs[i], opts);
    }
  };
  // threads <= 0 uses one worker per hardware thread.
  const int n_threads =
      threads > 0 ? threads : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  summarize(s);
  return s;
}

std::string rows_tsv(const BatchSummary& s, const std::string& header_comment) {
  std::ostringstream out;
  out << "# " << header_comment << "\n";
  out << "index\tseed\tpolicy\tdriver\tbin\tspeed_kmh\tlimit_kmh\tav_offset\tclass\ttta\tleader"
         "\tlag_speed\tlag_distance\tf_end\taeb\tcollision\terror\n";
  for (const EpisodeRow& r : s.rows) {
    out << r.spec.index << '\t' << r.spec.seed << '\t' << r.policy << '\t'
        << to_string(r.spec.driver) << '\t' << to_string(r.spec.bin) << '\t'
        << num(r.spec.speed_kmh) << '\t' << num(r.spec.speed_limit_kmh) << '\t'
        << num(r.spec.av_offset) << '\t' << (r.ok ? to_string(r.classification) : "Error") << '\t'
        << num(r.tta) << '\t' << (r.leader == Vehicle::kAv ? "AV" : "HV") << '\t'
        << num(r.lag_speed) << '\t' << num(r.lag_distance) << '\t' << num(r.f_end) << '\t'
        << (r.aeb ? 1 : 0) << '\t' << (r.collision ? 1 : 0) << '\t' << r.error << '\n';
  }
  return out.str();
}

std::string table_tsv(const BatchSummary& s, const std::string& header_comment) {
  std::ostringstream out;
  out << "# " << header_comment << "\n";
  out << "policy\tbin\tDanger\tFullStop\tNormal\tFailed\tTotal\n";
  int col[kNumClasses] = {0, 0, 0, 0};
  for (int b = 0; b < kNumBins; ++b) {
    int total = 0;
    out << s.policy << '\t' << to_string(static_cast<SpeedBin>(b));
    for (int c = 0; c < kNumClasses; ++c) {
      out << '\t' << s.counts[b][c];
      total += s.counts[b][c];
      col[c] += s.counts[b][c];
    }
    out << '\t' << total << '\n';
  }
  int total = 0;
  out << s.policy << "\tAll";
  for (int c = 0; c < kNumClasses; ++c) {
    out << '\t' << col[c];
    total += col[c];
  }
  out << '\t' << total << '\n';
  return out.str();
}

std::string lag_tsv(const BatchSummary& s, const std::string& header_comment) {
  std::ostringstream out;
  out << "# " << header_comment << "\n";
  out << "policy\tleader\tn\tfull_stops\tmean_tta\tmean_lag_speed\tmean_lag_distance\n";
  for (int k = 0; k < 2; ++k) {
    const LagStats& st = k == 0 ? s.av_leading : s.hv_leading;
    out << s.policy << '\t' << (k == 0 ? "AV" : "HV") << '\t' << st.n << '\t' << st.full_stops
        << '\t' << num(st.mean_tta) << '\t' << num(st.mean_speed) << '\t' << num(st.mean_distance)
        << '\n';
  }
  return out.str();
}

}  // namespace scgame
