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

#include <gtest/gtest.h>

#include <string>

#include "scgame/calibrate.hpp"

namespace scgame {
namespace {

ScenarioConfig shipped() {
  ScenarioConfig c;
  c.weights.lambda = 0.92;
  c.utility.efficiency_branch = EfficiencyBranch::kCorrected;
  c.utility.hv_safety = HvSafetyConvention::kSigned;
  c.aeb.horizon = 1.5;
  return c;
}

CalibrationOptions small(int candidates, std::size_t budget) {
  CalibrationOptions o;
  o.candidates = candidates;
  o.budget = budget;
  return o;
}

TEST(Calibrate, SameSeedSameWeights) {
  const CalibrationOptions o = small(4, 8);
  const CalibrationResult a = calibrate_weights(shipped(), o);
  const CalibrationResult b = calibrate_weights(shipped(), o);
  EXPECT_EQ(a.best_index, b.best_index);
  EXPECT_EQ(a.best.beta, b.best.beta);
  EXPECT_EQ(a.best.gamma, b.best.gamma);
  EXPECT_EQ(a.best.lambda, b.best.lambda);
  EXPECT_EQ(calibration_tsv(a, "x"), calibration_tsv(b, "x"));
}

TEST(Calibrate, ThreadCountDoesNotChangeResult) {
  CalibrationOptions o = small(3, 8);
  const CalibrationResult a = calibrate_weights(shipped(), o);
  o.threads = 3;
  EXPECT_EQ(calibration_tsv(a, "x"), calibration_tsv(calibrate_weights(shipped(), o), "x"));
}

TEST(Calibrate, SingleCandidateIsReturned) {
  const CalibrationResult r = calibrate_weights(shipped(), small(1, 1));
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_EQ(r.best_index, 0u);
  EXPECT_EQ(r.best.beta, r.candidates[0].weights.beta);
  EXPECT_EQ(r.best.alpha, 1.0);
}

TEST(Calibrate, CandidatesStayInsideRanges) {
  const CalibrationResult r = calibrate_weights(shipped(), small(8, 1));
  for (const CandidateScore& c : r.candidates) {
    EXPECT_GE(c.weights.beta, 0.1);
    EXPECT_LE(c.weights.beta, 1.0);
    EXPECT_GE(c.weights.gamma, 0.0);
    EXPECT_LE(c.weights.gamma, 1.0);
    EXPECT_GE(c.weights.lambda, 0.0);
    EXPECT_LT(c.weights.lambda, 0.99 + 1e-12);
  }
}

TEST(Calibrate, DangerOnlyObjectivePicksLowestDangerRate) {
  CalibrationOptions o = small(6, 12);
  o.objective = {1.0, 0.0, 0.0};
  const CalibrationResult r = calibrate_weights(shipped(), o);
  for (const CandidateScore& c : r.candidates) {
    if (c.valid) { EXPECT_GE(c.danger_rate, r.candidates[r.best_index].danger_rate); }
  }
  // A zero-danger candidate wins whenever one exists.
  for (const CandidateScore& c : r.candidates) {
    if (c.valid && c.danger_rate == 0.0) {
      EXPECT_EQ(r.candidates[r.best_index].danger_rate, 0.0);
    }
  }
}

TEST(Calibrate, ObjectiveIsWeightedSum) {
  const CalibrationOptions o = small(3, 8);
  const CalibrationResult r = calibrate_weights(shipped(), o);
  for (const CandidateScore& c : r.candidates) {
    if (!c.valid) continue;
    EXPECT_NEAR(c.objective,
                o.objective.w_danger * c.danger_rate + o.objective.w_time * c.mean_crossing_time +
                    o.objective.w_full_stop * c.full_stop_rate,
                1e-12);
    EXPECT_GE(c.mean_crossing_time, 0.0);
    EXPECT_LE(c.mean_crossing_time, kCrossingTimeCap);
  }
}

TEST(Calibrate, AllInvalidCandidatesRaise) {
  CalibrationOptions o = small(3, 2);
  o.lambda_range = {1.2, 1.5};  // outside [0, 1)
  EXPECT_THROW(calibrate_weights(shipped(), o), CalibrationError);
}

TEST(Calibrate, RejectsEmptySearch) {
  EXPECT_THROW(calibrate_weights(shipped(), small(0, 4)), CalibrationError);
  EXPECT_THROW(calibrate_weights(shipped(), small(2, 0)), CalibrationError);
}

TEST(Calibrate, CrossingTimeWithoutArrivalIsCapped) {
  EXPECT_EQ(normalized_crossing_time(EpisodeRecord{}), kCrossingTimeCap);
}

TEST(Calibrate, TableMarksBest) {
  const CalibrationResult r = calibrate_weights(shipped(), small(2, 1));
  const std::string tsv = calibration_tsv(r, "seed=42");
  EXPECT_EQ(tsv.rfind("# seed=42\n", 0), 0u);
  EXPECT_NE(tsv.find("\tbest\n"), std::string::npos);
}

}  // namespace
}  // namespace scgame
