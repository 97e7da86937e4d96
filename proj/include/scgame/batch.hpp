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

#ifndef SCGAME_BATCH_HPP_
#define SCGAME_BATCH_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "scgame/config.hpp"
#include "scgame/sim.hpp"

namespace scgame {

// One sampled scenario. Seeds are drawn once so that every policy sees the
// same scenario list (paired comparison).
struct ScenarioSpec {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  SpeedBin bin = SpeedBin::kMid;
  double speed_kmh = 45.0;
  double speed_limit_kmh = 45.0;
  double av_offset = 0.0;
  DriverKind driver = DriverKind::kConstantThrottle;
};

struct SamplerOptions {
  // Relative frequency of each driver model, indexed by DriverKind
  // (External is never sampled).
  std::array<double, 4> driver_weights = {0.35, 0.30, 0.30, 0.05};
  double av_offset_range = 8.0;  // offsets drawn from [-range, range] m
  bool rss_response = false;
};

// Speed bins are visited round-robin; the speed is uniform inside the bin and
// the limit is the nearest preset at or above the bin (20, 45 or 70 km/h).
std::vector<ScenarioSpec> sample_scenarios(std::size_t n, std::uint64_t seed,
                                           const SamplerOptions& opts = {});

ScenarioConfig apply_spec(const ScenarioConfig& base, const ScenarioSpec& spec,
                          const SamplerOptions& opts = {});

struct EpisodeRow {
  ScenarioSpec spec;
  std::string policy;
  bool ok = true;
  std::string error;
  Classification classification = Classification::kNormal;
  double tta = 0.0;
  Vehicle leader = Vehicle::kAv;
  double lag_speed = 0.0;     // m/s at the leader's arrival
  double lag_distance = 0.0;  // m to conflict entry at the leader's arrival
  double f_end = 0.0;
  bool aeb = false;
  bool collision = false;
};

inline constexpr int kNumBins = 4;
inline constexpr int kNumClasses = 4;

struct LagStats {
  int n = 0;
  double mean_tta = 0.0;  // over episodes with TTA != -1
  int full_stops = 0;
  double mean_speed = 0.0;
  double mean_distance = 0.0;
};

struct BatchSummary {
  std::string policy;
  std::vector<EpisodeRow> rows;
  // counts[bin][classification]; out-of-range speeds are not binned.
  std::array<std::array<int, kNumClasses>, kNumBins> counts{};
  int errors = 0;
  LagStats av_leading;
  LagStats hv_leading;

  int count(Classification c) const;
  int count(SpeedBin b, Classification c) const;
};

EpisodeRow run_row(const ScenarioConfig& base, const ScenarioSpec& spec,
                   const SamplerOptions& opts = {});

// Runs every scenario under `policy`. Results are placed by scenario index,
// so the summary does not depend on `threads`.
BatchSummary batch_run(const ScenarioConfig& base, PolicyKind policy,
                       const std::vector<ScenarioSpec>& specs, int threads = 1,
                       const SamplerOptions& opts = {});

// Recomputes the aggregate tables from the rows.
void summarize(BatchSummary& s);

// Tab-separated per-episode rows and the aggregate tables.
std::string rows_tsv(const BatchSummary& s, const std::string& header_comment);
std::string table_tsv(const BatchSummary& s, const std::string& header_comment);
std::string lag_tsv(const BatchSummary& s, const std::string& header_comment);

}  // namespace scgame

#endif  // SCGAME_BATCH_HPP_
