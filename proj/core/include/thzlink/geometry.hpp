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

#ifndef THZLINK_GEOMETRY_HPP
#define THZLINK_GEOMETRY_HPP

#include <utility>

namespace thzlink::geometry {

// Coordinates are right-handed ENU: x east, y north, z up, meters.
// Azimuth and yaw are compass angles in degrees, clockwise from north;
// elevation and pitch are degrees above the horizon.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
Vec3 normalized(const Vec3& v);

/// Angle between two direction vectors in degrees, in [0, 180].
/// Stable near 0 and 180 (atan2 form).
double angle_between_deg(const Vec3& a, const Vec3& b);

/// Unit vector for a compass azimuth / elevation pair.
Vec3 direction_from_azimuth_elevation(double azimuth_deg, double elevation_deg);

struct StationPose {
  Vec3 position_m;                      // z is the transmitter height
  double boresight_elevation_deg = 8.0; // measured setup tilts the feed up 8 deg
  double boresight_azimuth_deg = 0.0;

  double height_m() const { return position_m.z; }
  Vec3 boresight() const;
  void validate() const;  // throws Error{InvalidParameter}
};

struct UavPose {
  Vec3 position_m;
  double pitch_deg = -8.0;  // receiver tilted back down toward the station
  double roll_deg = 0.0;
  double yaw_deg = 180.0;

  double height_m() const { return position_m.z; }
  /// Receiver boresight from yaw then pitch. Roll does not move the
  /// boresight of an axially symmetric horn.
  Vec3 boresight() const;
  void validate() const;
};

/// Link decomposition: d^2 = a^2 + b^2 + (h_uav - h_tx)^2 where a is the
/// horizontal offset inside the vertical plane of the station boresight
/// azimuth, b the horizontal offset across it.
struct LinkGeometry {
  double distance_m = 0.0;
  double along_track_m = 0.0;  // a
  double cross_track_m = 0.0;  // b
  double tx_off_boresight_deg = 0.0;
  double rx_off_boresight_deg = 0.0;
};

double link_distance(const StationPose& station, const UavPose& uav);

/// (tx angle, rx angle) between each boresight and the connecting ray,
/// degrees in [0, 180]. Throws Error{ZeroDistance} on coincident poses.
std::pair<double, double> off_boresight_angles(const StationPose& station,
                                               const UavPose& uav);

LinkGeometry link_geometry(const StationPose& station, const UavPose& uav);

}  // namespace thzlink::geometry

#endif  // THZLINK_GEOMETRY_HPP
