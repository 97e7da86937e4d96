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

#ifndef SCGAME_TYPES_HPP_
#define SCGAME_TYPES_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scgame {

// Every recoverable failure in the library derives from Error so callers at
// the C boundary can map them onto a single error-code table.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error { using Error::Error; };
class ModelError : public Error { using Error::Error; };
class PredictionError : public Error { using Error::Error; };
class EfficiencyError : public Error { using Error::Error; };
class CalibrationError : public Error { using Error::Error; };
class ConfigError : public Error { using Error::Error; };
class MetricError : public Error { using Error::Error; };

enum class Strategy { kYield, kNotYield };

constexpr std::string_view to_string(Strategy s) {
  return s == Strategy::kYield ? "Yield" : "NotYield";
}

struct StrategyProfile {
  Strategy av = Strategy::kYield;
  Strategy hv = Strategy::kYield;

  friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

// Row/column order of the payoff table: Yield first, then Not Yield.
inline constexpr Strategy kStrategies[2] = {Strategy::kYield, Strategy::kNotYield};

constexpr int index_of(Strategy s) { return s == Strategy::kYield ? 0 : 1; }

// Longitudinal state of one vehicle on its straight path. `s` is the
// arc-length of the front bumper, with the conflict-area entry at s = 0, so a
// vehicle approaching the intersection has s < 0.
struct VehicleState {
  double s = 0.0;
  double v = 0.0;
  double a = 0.0;
  double length = 4.6;
  double width = 1.8;

  double distance_to_entry() const { return s < 0.0 ? -s : 0.0; }
};

}  // namespace scgame

#endif  // SCGAME_TYPES_HPP_
