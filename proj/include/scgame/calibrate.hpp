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

#ifndef SCGAME_CALIBRATE_HPP_
#define SCGAME_CALIBRATE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "scgame/batch.hpp"

namespace scgame {

struct CalibrationObjective {
  double w_danger = 1.0;
  double w_time = 0.2;
  double w_full_stop = 0.3;
};

struct CalibrationOptions {
  int candidates = 16;
  std::size_t budget = 40;  // episodes per candidate
  std::uint64_t seed = 42;
  std::pair<double, double> beta_range{0.1, 1.0};
  std::pair<double, double> gamma_range{0.0, 1.0};
  std::pair<double, double> lambda_range{0.0, 0.99};
  PolicyKind policy = PolicyKind::kSc;
  int threads = 1;
  SamplerOptions sampler;
  CalibrationObjective objective;
};

struct CandidateScore {
  GameWeights weights;
  bool valid = false;
  int episodes = 0;
  double danger_rate = 0.0;
  double full_stop_rate = 0.0;
  double mean_crossing_time = 0.0;  // AV crossing time over free-flow time
  double objective = 0.0;
};

struct CalibrationResult {
  GameWeights best;
  std::size_t best_index = 0;
  std::vector<CandidateScore> candidates;
};

// AV time to conflict entry divided by the free-flow time from its start
// position, capped at kCrossingTimeCap (also used for a stopped lagging AV).
inline constexpr double kCrossingTimeCap = 3.0;
double normalized_crossing_time(const EpisodeRecord& r);

// Random search over (beta, gamma, lambda) with alpha fixed at 1. Every
// candidate is scored on the same scenario list. Throws CalibrationError when
// no candidate yields a valid episode.
CalibrationResult calibrate_weights(const ScenarioConfig& base, const CalibrationOptions& opts);

std::string calibration_tsv(const CalibrationResult& r, const std::string& header_comment);

}  // namespace scgame

#endif  // SCGAME_CALIBRATE_HPP_
