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

#ifndef SCGAME_FIXTURES_HPP_
#define SCGAME_FIXTURES_HPP_

#include <string>
#include <vector>

#include "scgame/sim.hpp"

namespace scgame {

inline const std::vector<std::string> kFixtureNames = {"nosc", "rss", "sc"};

struct FixtureCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FixtureResult {
  std::string name;
  EpisodeRecord record;
  std::vector<FixtureCheck> checks;
  // -1 identical, -2 golden file missing, otherwise first differing line.
  long golden_line = -1;
  bool pass = false;
};

// Qualitative signature of each pinned case, chosen by the record's policy:
//   nosc: AEB fired and the AV ends in the blind zone (F = 0)
//   rss:  Danger, with NotYield held until the AV is within 2.5 s of entry
//   sc:   a deceleration decision before entry, F >= 0.5 and TTA > 0.83 s
//         at the end, classification Normal
std::vector<FixtureCheck> fixture_signature(const EpisodeRecord& r);

// Runs <dir>/<name>.yaml, checks its signature and compares the trace with
// <dir>/golden/<name>.ndjson. With `regenerate` the golden file is rewritten.
// The per-step table goes to <out_dir>/<name>.steps.tsv when out_dir is set.
FixtureResult run_fixture(const std::string& dir, const std::string& name,
                          const std::string& out_dir, bool regenerate);

std::vector<FixtureResult> run_fixtures(const std::string& dir, const std::string& out_dir,
                                        bool regenerate);

std::string fixtures_report(const std::vector<FixtureResult>& results);

}  // namespace scgame

#endif  // SCGAME_FIXTURES_HPP_
