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

#ifndef SCGAME_TRACE_HPP_
#define SCGAME_TRACE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "scgame/sim.hpp"

namespace scgame {

inline constexpr int kTraceSchemaVersion = 1;

// Line-delimited JSON: one header line, one line per step, one summary line.
// Key order and number formatting are fixed so equal records give equal bytes.
std::string trace_header_line(const EpisodeRecord& r);
std::string trace_step_line(const StepSample& s);
std::string trace_summary_line(const EpisodeRecord& r);

void write_trace(std::ostream& out, const EpisodeRecord& r);
std::string trace_ndjson(const EpisodeRecord& r);
void write_trace_file(const std::string& path, const EpisodeRecord& r);

// Per-step plotting table (time series of speeds, distances, F and commands).
std::string steps_tsv(const EpisodeRecord& r);

// One-line human summary printed by the CLI.
std::string summary_text(const EpisodeRecord& r);

// Index of the first differing line, or -1 if both texts are identical.
long first_diverging_line(const std::string& a, const std::string& b);

}  // namespace scgame

#endif  // SCGAME_TRACE_HPP_
