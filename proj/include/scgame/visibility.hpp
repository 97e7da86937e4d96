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

#ifndef SCGAME_VISIBILITY_HPP_
#define SCGAME_VISIBILITY_HPP_

#include <array>
#include <numbers>
#include <vector>

#include "scgame/types.hpp"

namespace scgame {

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Planar pose; heading is the counter-clockwise angle of the body x axis.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
};

// A rectangular body located by its geometric center.
struct PlanarBody {
  Pose2 center;
  double length = 4.6;
  double width = 1.8;

  std::array<Point2, 4> corners() const;
};

// Truck cabin dimensions (m). Heights are measured from the ground.
struct CabinGeometry {
  double w = 2.5;     // overall cabin width
  double w_e = 0.6;   // eye point to left cabin side
  double l_e = 1.5;   // eye point to cabin front
  double h_sm = 1.9;  // side-window bottom edge
  double h_fm = 2.0;  // windshield / center-stack bottom edge
  double h_e = 2.6;   // eye height
  double cabin_length = 2.3;

  // Throws GeometryError.
  void validate() const;

  // Eye point in the body frame (origin at front-bumper center, x forward,
  // y to the left).
  Point2 eye_point() const { return {-l_e, w / 2.0 - w_e}; }
};

// Blind-zone extents plus the footprint they span, expressed in the body
// frame used by CabinGeometry::eye_point(). The footprint is the axis-aligned
// rectangle covering the cabin, the frontal strip and both lateral strips;
// vertices are counter-clockwise.
struct BlindZone {
  double left = 0.0;
  double right = 0.0;
  double front = 0.0;
  std::vector<Point2> footprint;

  bool contains(Point2 body_point) const;
};

BlindZone compute_blind_zone(const CabinGeometry& g);

enum class HeadDirection { kLeft = 0, kCenter = 1, kRight = 2 };

enum class ReferencePoint {
  kCenter,         // AV geometric center
  kNearestCorner,  // AV corner closest to the driver's eye
};

struct ViewModel {
  std::array<double, 3> omega = {0.0, 0.17, 0.83};  // left, center, right
  double xi = 1.0;
  double a_max = deg_to_rad(200.0);
  double a_c = deg_to_rad(60.0);
  std::array<double, 3> mu = {deg_to_rad(-45.0), 0.0, deg_to_rad(45.0)};
  double p_min = 0.3;
  double head_turn = deg_to_rad(45.0);
  ReferencePoint reference = ReferencePoint::kCenter;

  // Throws ModelError.
  void validate() const;
};

enum class Region { kBlindZone, kFrontDirectField, kElsewhere };

const char* to_string(Region r);

struct RelativePose {
  double theta = 0.0;  // rad, positive to the driver's right
  double range = 0.0;  // m, eye point to AV reference point
  Region region = Region::kElsewhere;
};

// `hv_front` locates the truck's front-bumper center and heading in the world
// frame; `av` is the AV body in the same frame.
RelativePose relative_pose(const Pose2& hv_front, const PlanarBody& av, const CabinGeometry& g,
                           const BlindZone& bz, const ViewModel& vm);

// Probability that the AV at viewing angle `theta` is observed while the head
// is turned toward `direction`. Zero outside that direction's scanned field.
double observation_probability(double theta, HeadDirection direction, const ViewModel& vm);

// Attention-weighted visibility F(theta); zero inside the blind zone.
double visibility_probability(const RelativePose& pose, const ViewModel& vm);

// Blind-zone footprint transformed into the world frame of `hv_front`.
std::vector<Point2> footprint_in_world(const BlindZone& bz, const Pose2& hv_front);

double wrap_angle(double a);

}  // namespace scgame

#endif  // SCGAME_VISIBILITY_HPP_
