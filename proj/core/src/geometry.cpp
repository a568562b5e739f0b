// Copyright 2026 The thzlink Authors
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

#include "thzlink/geometry.hpp"

#include <cmath>
#include <numbers>

#include "thzlink/errors.hpp"

namespace thzlink::geometry {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;
constexpr double kRadPerDeg = std::numbers::pi / 180.0;

bool finite(const Vec3& v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

}  // namespace

double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  if (n == 0.0) {
    throw Error(ErrorKind::ZeroDistance, "cannot normalize a zero vector");
  }
  return v * (1.0 / n);
}

double angle_between_deg(const Vec3& a, const Vec3& b) {
  return std::atan2(norm(cross(a, b)), dot(a, b)) * kDegPerRad;
}

Vec3 direction_from_azimuth_elevation(double azimuth_deg,
                                      double elevation_deg) {
  const double az = azimuth_deg * kRadPerDeg;
  const double el = elevation_deg * kRadPerDeg;
  return {std::sin(az) * std::cos(el), std::cos(az) * std::cos(el),
          std::sin(el)};
}

Vec3 StationPose::boresight() const {
  return direction_from_azimuth_elevation(boresight_azimuth_deg,
                                          boresight_elevation_deg);
}

void StationPose::validate() const {
  if (!finite(position_m) || position_m.z < 0.0) {
    throw Error(ErrorKind::InvalidParameter,
                "station position must be finite with height >= 0");
  }
  if (!(boresight_elevation_deg > -90.0 && boresight_elevation_deg < 90.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "station boresight elevation must lie in (-90, 90) deg");
  }
  if (!(boresight_azimuth_deg >= 0.0 && boresight_azimuth_deg < 360.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "station boresight azimuth must lie in [0, 360) deg");
  }
}

Vec3 UavPose::boresight() const {
  return direction_from_azimuth_elevation(yaw_deg, pitch_deg);
}

void UavPose::validate() const {
  if (!finite(position_m) || position_m.z < 0.0) {
    throw Error(ErrorKind::InvalidParameter,
                "UAV position must be finite with height >= 0");
  }
  if (!(pitch_deg >= -90.0 && pitch_deg <= 90.0) ||
      !(roll_deg >= -90.0 && roll_deg <= 90.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "UAV pitch and roll must lie in [-90, 90] deg");
  }
  if (!(yaw_deg >= 0.0 && yaw_deg < 360.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "UAV yaw must lie in [0, 360) deg");
  }
}

double link_distance(const StationPose& station, const UavPose& uav) {
  return norm(uav.position_m - station.position_m);
}

std::pair<double, double> off_boresight_angles(const StationPose& station,
                                               const UavPose& uav) {
  const Vec3 ray = uav.position_m - station.position_m;
  if (norm(ray) == 0.0) {
    throw Error(ErrorKind::ZeroDistance,
                "off-boresight angles undefined for coincident poses");
  }
  const double tx = angle_between_deg(station.boresight(), ray);
  const double rx = angle_between_deg(uav.boresight(), ray * -1.0);
  return {tx, rx};
}

LinkGeometry link_geometry(const StationPose& station, const UavPose& uav) {
  const Vec3 delta = uav.position_m - station.position_m;
  const double az = station.boresight_azimuth_deg * kRadPerDeg;
  // Orthonormal horizontal basis: along the boresight azimuth and across it.
  const Vec3 along{std::sin(az), std::cos(az), 0.0};
  const Vec3 across{std::cos(az), -std::sin(az), 0.0};

  LinkGeometry out;
  out.distance_m = norm(delta);
  out.along_track_m = dot(delta, along);
  out.cross_track_m = dot(delta, across);
  const auto [tx, rx] = off_boresight_angles(station, uav);
  out.tx_off_boresight_deg = tx;
  out.rx_off_boresight_deg = rx;
  return out;
}

}  // namespace thzlink::geometry
