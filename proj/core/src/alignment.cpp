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

#include "thzlink/alignment.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "thzlink/errors.hpp"
#include "thzlink/format.hpp"

namespace thzlink::alignment {

namespace {

constexpr double kRadPerDeg = std::numbers::pi / 180.0;
constexpr double kBisectionTol = 1e-9;  // meters

struct OffsetGeometry {
  geometry::Vec3 on_axis_position;
  geometry::Vec3 lateral;  // unit vector perpendicular to the boresight
  double nominal_yaw_deg;
  double nominal_pitch_deg;
};

OffsetGeometry make_offset_geometry(const channel::Link& link,
                                    double distance_m) {
  const geometry::Vec3 boresight = link.station.boresight();
  OffsetGeometry g;
  g.on_axis_position = link.station.position_m + boresight * distance_m;
  // Horizontal cross-track direction; the pattern is axially symmetric so
  // any perpendicular direction gives the same contour.
  const double az = link.station.boresight_azimuth_deg * kRadPerDeg;
  g.lateral = {std::cos(az), -std::sin(az), 0.0};
  // Receiver nominally aims straight back along the ray.
  const geometry::Vec3 back = boresight * -1.0;
  g.nominal_pitch_deg = std::asin(back.z) / kRadPerDeg;
  g.nominal_yaw_deg = std::atan2(back.x, back.y) / kRadPerDeg;
  if (g.nominal_yaw_deg < 0.0) g.nominal_yaw_deg += 360.0;
  return g;
}

/// SNR at lateral offset s. TxOnly re-aims the receiver at the station
/// (Full mode with an exact back-pointing pose); TxAndRx keeps the
/// nominal receiver boresight (Calibrated mode).
double snr_at_offset(const channel::Link& link, const OffsetGeometry& g,
                     double offset_m, PatternConfig config) {
  channel::Link local = link;
  local.nominal_rx_pitch_deg = g.nominal_pitch_deg;
  local.nominal_rx_yaw_deg = g.nominal_yaw_deg;

  geometry::UavPose uav;
  uav.position_m = g.on_axis_position + g.lateral * offset_m;
  uav.roll_deg = 0.0;
  if (config == PatternConfig::TxOnly) {
    const geometry::Vec3 back =
        geometry::normalized(link.station.position_m - uav.position_m);
    uav.pitch_deg = std::asin(back.z) / kRadPerDeg;
    uav.yaw_deg = std::atan2(back.x, back.y) / kRadPerDeg;
    if (uav.yaw_deg < 0.0) uav.yaw_deg += 360.0;
    return channel::mean_snr_db(local, uav, channel::ModelMode::Full);
  }
  uav.pitch_deg = g.nominal_pitch_deg;
  uav.yaw_deg = g.nominal_yaw_deg;
  return channel::mean_snr_db(local, uav, channel::ModelMode::Calibrated);
}

}  // namespace

double three_db_radius_m(const channel::Link& link, double distance_m,
                         PatternConfig config) {
  link.station.validate();
  link.tx_pattern.validate();
  link.rx_pattern.validate();
  link.params.validate();
  if (!(distance_m >= link.params.reference_distance_m)) {
    throw Error(ErrorKind::BelowReferenceDistance,
                "3-dB solve needs distance >= reference distance");
  }

  const OffsetGeometry g = make_offset_geometry(link, distance_m);
  const double on_axis = snr_at_offset(link, g, 0.0, config);
  const auto drop = [&](double s) {
    return on_axis - snr_at_offset(link, g, s, config);
  };

  // Bracket [0, L tan(min(3 HPBW, 60 deg))]: the quadratic lobe already
  // exceeds 3 dB well inside it for any legal floor.
  const double bracket_angle =
      std::min(3.0 * link.tx_pattern.hpbw_deg, 60.0) * kRadPerDeg;
  double lo = 0.0;
  double hi = distance_m * std::tan(bracket_angle);
  if (drop(hi) < 3.0) {
    throw Error(ErrorKind::NoDrop,
                "pattern floor reached before the 3-dB contour");
  }
  while (hi - lo > kBisectionTol) {
    const double mid = 0.5 * (lo + hi);
    if (drop(mid) < 3.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<AlignmentResult> sweep_3db(const channel::Link& link,
                                       std::span<const double> distances_m,
                                       std::span<const double> hpbws_deg,
                                       PatternConfig config) {
  if (distances_m.empty() || hpbws_deg.empty()) {
    throw Error(ErrorKind::InvalidParameter,
                "sweep needs non-empty distance and HPBW lists");
  }
  std::vector<AlignmentResult> rows;
  rows.reserve(distances_m.size() * hpbws_deg.size());
  for (double distance : distances_m) {
    for (double hpbw : hpbws_deg) {
      channel::Link local = link;
      local.tx_pattern.hpbw_deg = hpbw;
      if (config == PatternConfig::TxAndRx) {
        local.rx_pattern.hpbw_deg = hpbw;
      }
      local.tx_pattern.validate();
      local.rx_pattern.validate();
      AlignmentResult row;
      row.distance_m = distance;
      row.hpbw_deg = hpbw;
      row.config = config;
      row.diameter_3db_m = 2.0 * three_db_radius_m(local, distance, config);
      rows.push_back(row);
    }
  }
  return rows;
}

double footprint_ratio(double measured_diameter_m, double hpbw_footprint_m) {
  if (!(measured_diameter_m > 0.0) || !(hpbw_footprint_m > 0.0)) {
    throw Error(ErrorKind::NonPositiveRange,
                "footprint ratio needs positive diameters");
  }
  return measured_diameter_m / hpbw_footprint_m;
}

std::string sweep_to_csv(std::span<const AlignmentResult> rows) {
  std::ostringstream out;
  out << "distance_m,hpbw_deg,config,diameter_3db_m\n";
  for (const auto& row : rows) {
    out << format::sig9(row.distance_m) << ',' << format::sig9(row.hpbw_deg)
        << ',' << (row.config == PatternConfig::TxOnly ? "tx" : "txrx") << ','
        << format::sig9(row.diameter_3db_m) << '\n';
  }
  return out.str();
}

}  // namespace thzlink::alignment
