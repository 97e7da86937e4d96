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

#include "scgame/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scgame {

namespace {

Point2 to_body(const Pose2& frame, Point2 world) {
  const double dx = world.x - frame.x;
  const double dy = world.y - frame.y;
  const double c = std::cos(frame.heading);
  const double s = std::sin(frame.heading);
  return {c * dx + s * dy, -s * dx + c * dy};
}

Point2 to_world(const Pose2& frame, Point2 body) {
  const double c = std::cos(frame.heading);
  const double s = std::sin(frame.heading);
  return {frame.x + c * body.x - s * body.y, frame.y + s * body.x + c * body.y};
}

}  // namespace

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}

std::array<Point2, 4> PlanarBody::corners() const {
  const double hl = length / 2.0;
  const double hw = width / 2.0;
  return {to_world(center, {hl, hw}), to_world(center, {-hl, hw}),
          to_world(center, {-hl, -hw}), to_world(center, {hl, -hw})};
}

void CabinGeometry::validate() const {
  if (!(w > 0.0) || !(l_e > 0.0) || !(h_e > 0.0) || !(cabin_length > 0.0)) {
    throw GeometryError("cabin dimensions w, l_e, h_e, cabin_length must be positive");
  }
  if (!(h_sm >= 0.0) || !(h_fm >= 0.0)) {
    throw GeometryError("window edge heights must be non-negative");
  }
  if (!(w_e > 0.0 && w_e < w)) {
    throw GeometryError("eye point must lie strictly inside the cabin width");
  }
  if (!(h_e > h_sm) || !(h_e > h_fm)) {
    throw GeometryError("eye height must exceed both window edge heights");
  }
}

BlindZone compute_blind_zone(const CabinGeometry& g) {
  g.validate();
  BlindZone bz;
  bz.left = g.h_sm * g.w_e / (g.h_e - g.h_sm);
  bz.right = g.h_sm * (g.w - g.w_e) / (g.h_e - g.h_sm);
  bz.front = g.h_fm * g.l_e / (g.h_e - g.h_fm);

  const double x_rear = -g.cabin_length;
  const double x_front = bz.front;
  const double y_left = g.w / 2.0 + bz.left;
  const double y_right = -g.w / 2.0 - bz.right;
  bz.footprint = {{x_front, y_left}, {x_rear, y_left}, {x_rear, y_right}, {x_front, y_right}};
  return bz;
}

bool BlindZone::contains(Point2 p) const {
  // Even-odd rule; boundary points count as inside.
  const std::size_t n = footprint.size();
  if (n < 3) return false;
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = footprint[i];
    const Point2& b = footprint[j];
    const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
    if (cross == 0.0 && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
        p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y)) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

const char* to_string(Region r) {
  switch (r) {
    case Region::kBlindZone:
      return "BlindZone";
    case Region::kFrontDirectField:
      return "FrontDirectField";
    case Region::kElsewhere:
      return "Elsewhere";
  }
  return "Elsewhere";
}

void ViewModel::validate() const {
  double sum = 0.0;
  for (double w : omega) {
    if (!(w >= 0.0 && w <= 1.0)) throw ModelError("attention weights must lie in [0,1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ModelError("attention weights must sum to 1");
  if (!(a_c > 0.0) || !(a_c < a_max)) throw ModelError("require 0 < A_c < A_max");
  if (!(p_min > 0.0 && p_min < 1.0)) throw ModelError("require 0 < p_min < 1");
  if (!(xi > 0.0 && xi <= 1.0)) throw ModelError("require 0 < xi <= 1");
}

RelativePose relative_pose(const Pose2& hv_front, const PlanarBody& av, const CabinGeometry& g,
                           const BlindZone& bz, const ViewModel& vm) {
  const Point2 eye = g.eye_point();

  Point2 ref = to_body(hv_front, {av.center.x, av.center.y});
  if (vm.reference == ReferencePoint::kNearestCorner) {
    double best = std::numeric_limits<double>::infinity();
    for (const Point2& c : av.corners()) {
      const Point2 b = to_body(hv_front, c);
      const double d = std::hypot(b.x - eye.x, b.y - eye.y);
      if (d < best) {
        best = d;
        ref = b;
      }
    }
  }

  RelativePose pose;
  const double dx = ref.x - eye.x;
  const double dy = ref.y - eye.y;
  pose.theta = std::atan2(-dy, dx);
  pose.range = std::hypot(dx, dy);

  if (bz.contains(ref)) {
    pose.region = Region::kBlindZone;
    return pose;
  }
  pose.region = Region::kElsewhere;
  for (double mu : vm.mu) {
    if (std::abs(wrap_angle(pose.theta - mu)) <= vm.a_max / 2.0) {
      pose.region = Region::kFrontDirectField;
      break;
    }
  }
  return pose;
}

double observation_probability(double theta, HeadDirection direction, const ViewModel& vm) {
  if (!(vm.a_c < vm.a_max)) throw ModelError("require A_c < A_max");
  const double off = std::abs(wrap_angle(theta - vm.mu[static_cast<int>(direction)]));
  if (off <= vm.a_c / 2.0) return vm.xi;
  if (off <= vm.a_max / 2.0) {
    const double r = (2.0 * off - vm.a_c) / (vm.a_max - vm.a_c);
    return vm.xi * std::pow(vm.p_min, r * r);
  }
  return 0.0;
}

double visibility_probability(const RelativePose& pose, const ViewModel& vm) {
  if (pose.region == Region::kBlindZone) return 0.0;
  double f = 0.0;
  for (int i = 0; i < 3; ++i) {
    f += vm.omega[i] * observation_probability(pose.theta, static_cast<HeadDirection>(i), vm);
  }
  return std::clamp(f, 0.0, 1.0);
}

std::vector<Point2> footprint_in_world(const BlindZone& bz, const Pose2& hv_front) {
  std::vector<Point2> out;
  out.reserve(bz.footprint.size());
  for (const Point2& p : bz.footprint) out.push_back(to_world(hv_front, p));
  return out;
}

}  // namespace scgame
