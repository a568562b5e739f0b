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

#include "thzlink/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "thzlink/errors.hpp"
#include "thzlink/format.hpp"

namespace thzlink::trajectory {

namespace {

constexpr const char* kHeader =
    "t_s,x_m,y_m,z_m,pitch_deg,roll_deg,yaw_deg,power_dbm";

const char* kColumnNames[] = {"t_s",       "x_m",      "y_m",     "z_m",
                              "pitch_deg", "roll_deg", "yaw_deg", "power_dbm"};

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double wrap_yaw(double yaw_deg) {
  double y = std::fmod(yaw_deg, 360.0);
  if (y < 0.0) y += 360.0;
  return y;
}

}  // namespace

void JitterParams::validate() const {
  if (!(sigma_pos >= 0.0) || !(sigma_ang >= 0.0) || !(mean_reversion >= 0.0) ||
      !std::isfinite(sigma_pos) || !std::isfinite(sigma_ang) ||
      !std::isfinite(mean_reversion)) {
    throw Error(ErrorKind::InvalidParameter,
                "jitter volatilities and reversion rate must be finite and >= 0");
  }
  if (!(dt_s > 0.0) || !std::isfinite(dt_s)) {
    throw Error(ErrorKind::InvalidParameter, "jitter dt must be > 0 s");
  }
  if (!(duration_s >= dt_s) || !std::isfinite(duration_s)) {
    throw Error(ErrorKind::InvalidParameter,
                "jitter duration must be >= dt and finite");
  }
}

void FlightLog::validate() const {
  if (samples.empty()) {
    throw Error(ErrorKind::InvalidParameter, "flight log is empty");
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].t_s > samples[i - 1].t_s)) {
      throw Error(ErrorKind::NonMonotonicTime,
                  "flight-log time not strictly increasing at sample " +
                      std::to_string(i));
    }
  }
}

FlightLog simulate_hover(const geometry::UavPose& nominal,
                         const JitterParams& jitter, Rng& rng) {
  nominal.validate();
  jitter.validate();

  const std::size_t steps = static_cast<std::size_t>(
      std::floor(jitter.duration_s / jitter.dt_s + 1e-9));
  const double sqrt_dt = std::sqrt(jitter.dt_s);

  // State vector: x, y, z, pitch, roll, yaw.
  double state[6] = {nominal.position_m.x, nominal.position_m.y,
                     nominal.position_m.z, nominal.pitch_deg,
                     nominal.roll_deg,     nominal.yaw_deg};
  const double target[6] = {state[0], state[1], state[2],
                            state[3], state[4], state[5]};
  const double sigma[6] = {jitter.sigma_pos, jitter.sigma_pos,
                           jitter.sigma_pos, jitter.sigma_ang,
                           jitter.sigma_ang, jitter.sigma_ang};

  FlightLog log;
  log.samples.reserve(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k > 0) {
      for (int i = 0; i < 6; ++i) {
        state[i] += jitter.mean_reversion * (target[i] - state[i]) *
                        jitter.dt_s +
                    sigma[i] * sqrt_dt * rng.normal();
      }
    }
    FlightSample s;
    s.t_s = static_cast<double>(k) * jitter.dt_s;
    s.x_m = state[0];
    s.y_m = state[1];
    s.z_m = std::max(state[2], 0.0);
    // Keep every sample a valid pose: pitch/roll clamp, yaw wraps.
    s.pitch_deg = std::clamp(state[3], -90.0, 90.0);
    s.roll_deg = std::clamp(state[4], -90.0, 90.0);
    s.yaw_deg = wrap_yaw(state[5]);
    if (s.yaw_deg >= 360.0) s.yaw_deg = 0.0;
    log.samples.push_back(s);
  }
  return log;
}

FlightLog parse_flight_log(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(ErrorKind::ParseError, name + ": empty file");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    const auto present = split_csv(line);
    for (const char* column : kColumnNames) {
      if (std::find(present.begin(), present.end(), column) == present.end()) {
        throw Error(ErrorKind::MissingColumn,
                    name + ": missing column \"" + column + "\"");
      }
    }
    throw Error(ErrorKind::ParseError,
                name + ":1: header must be exactly \"" + kHeader + "\"");
  }

  FlightLog log;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 8) {
      throw Error(ErrorKind::ParseError,
                  name + ":" + std::to_string(line_no) + ": expected 8 fields, got " +
                      std::to_string(fields.size()));
    }
    const std::string where = name + ":" + std::to_string(line_no);
    FlightSample s;
    s.t_s = format::parse_double(fields[0], where);
    s.x_m = format::parse_double(fields[1], where);
    s.y_m = format::parse_double(fields[2], where);
    s.z_m = format::parse_double(fields[3], where);
    s.pitch_deg = format::parse_double(fields[4], where);
    s.roll_deg = format::parse_double(fields[5], where);
    s.yaw_deg = format::parse_double(fields[6], where);
    if (!fields[7].empty()) {
      s.power_dbm = format::parse_double(fields[7], where);
    }
    if (!std::isfinite(s.t_s)) {
      throw Error(ErrorKind::ParseError, where + ": time must be finite");
    }
    if (!log.samples.empty() && !(s.t_s > log.samples.back().t_s)) {
      throw Error(ErrorKind::NonMonotonicTime,
                  where + ": time does not increase");
    }
    try {
      s.pose().validate();
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, where + ": " + e.what());
    }
    log.samples.push_back(s);
  }
  if (log.samples.empty()) {
    throw Error(ErrorKind::ParseError, name + ": no samples");
  }
  return log;
}

void serialize_flight_log(const FlightLog& log, std::ostream& out) {
  log.validate();
  out << kHeader << '\n';
  for (const auto& s : log.samples) {
    out << format::sig9(s.t_s) << ',' << format::sig9(s.x_m) << ','
        << format::sig9(s.y_m) << ',' << format::sig9(s.z_m) << ','
        << format::sig9(s.pitch_deg) << ',' << format::sig9(s.roll_deg) << ','
        << format::sig9(s.yaw_deg) << ',';
    if (s.power_dbm.has_value()) out << format::sig9(*s.power_dbm);
    out << '\n';
  }
}

FlightLog load_flight_log(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open flight log: " + path.string());
  }
  return parse_flight_log(in, path.filename().string());
}

void write_flight_log(const FlightLog& log,
                      const std::filesystem::path& path) {
  std::ostringstream out;
  serialize_flight_log(log, out);
  format::write_file_atomic(path, out.str());
}

}  // namespace thzlink::trajectory
