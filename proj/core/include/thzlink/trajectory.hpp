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

#ifndef THZLINK_TRAJECTORY_HPP
#define THZLINK_TRAJECTORY_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thzlink/geometry.hpp"
#include "thzlink/rng.hpp"

namespace thzlink::trajectory {

/// Hover jitter: one Ornstein-Uhlenbeck process per position axis and per
/// Euler angle, mean-reverting to the nominal pose.
struct JitterParams {
  double sigma_pos = 0.05;      // m / sqrt(s), per axis
  double sigma_ang = 0.5;       // deg / sqrt(s), per angle
  double mean_reversion = 1.0;  // 1/s, shared by all six processes
  double dt_s = 0.1;
  double duration_s = 60.0;

  void validate() const;
};

struct FlightSample {
  double t_s = 0.0;
  double x_m = 0.0;
  double y_m = 0.0;
  double z_m = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  double yaw_deg = 0.0;
  std::optional<double> power_dbm;

  geometry::UavPose pose() const {
    return {{x_m, y_m, z_m}, pitch_deg, roll_deg, yaw_deg};
  }
};

struct FlightLog {
  std::vector<FlightSample> samples;
  // Synthesis provenance; not serialized.
  std::optional<geometry::StationPose> station;
  std::optional<std::uint64_t> seed;

  void validate() const;  // non-empty, strictly increasing t
};

/// duration/dt + 1 samples; sample 0 is the nominal pose. Per step the
/// update is x + theta (nominal - x) dt + sigma sqrt(dt) z with six
/// normals drawn in x, y, z, pitch, roll, yaw order. Yaw wraps into
/// [0, 360); pitch and roll clamp at +/-90 so every sample is a valid
/// pose.
FlightLog simulate_hover(const geometry::UavPose& nominal,
                         const JitterParams& jitter, Rng& rng);

// CSV with exact header t_s,x_m,y_m,z_m,pitch_deg,roll_deg,yaw_deg,power_dbm;
// 9 significant digits, empty field for absent power.
FlightLog load_flight_log(const std::filesystem::path& path);
void write_flight_log(const FlightLog& log,
                      const std::filesystem::path& path);

FlightLog parse_flight_log(std::istream& in, const std::string& name);
void serialize_flight_log(const FlightLog& log, std::ostream& out);

}  // namespace thzlink::trajectory

#endif  // THZLINK_TRAJECTORY_HPP
