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

#include "thzlink/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "thzlink/errors.hpp"
#include "thzlink/format.hpp"

namespace thzlink::config {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

struct KeyBinding {
  std::function<void(Scenario&, const std::string&, const std::string&)> set;
  std::function<std::string(const Scenario&)> get;
};

// Key table: one entry per config key, in print order.
const std::vector<std::pair<std::string, KeyBinding>>& key_table() {
  auto num = [](auto accessor) {
    return KeyBinding{
        [accessor](Scenario& s, const std::string& value,
                   const std::string& where) {
          *accessor(s) = format::parse_double(value, where);
        },
        [accessor](const Scenario& s) {
          return format::sig9(*accessor(const_cast<Scenario&>(s)));
        }};
  };
  static const std::vector<std::pair<std::string, KeyBinding>> table = {
      {"station.x_m", num([](Scenario& s) { return &s.station.position_m.x; })},
      {"station.y_m", num([](Scenario& s) { return &s.station.position_m.y; })},
      {"station.z_m", num([](Scenario& s) { return &s.station.position_m.z; })},
      {"station.boresight_elevation_deg",
       num([](Scenario& s) { return &s.station.boresight_elevation_deg; })},
      {"station.boresight_azimuth_deg",
       num([](Scenario& s) { return &s.station.boresight_azimuth_deg; })},
      {"uav.x_m", num([](Scenario& s) { return &s.nominal_uav.position_m.x; })},
      {"uav.y_m", num([](Scenario& s) { return &s.nominal_uav.position_m.y; })},
      {"uav.z_m", num([](Scenario& s) { return &s.nominal_uav.position_m.z; })},
      {"uav.pitch_deg",
       num([](Scenario& s) { return &s.nominal_uav.pitch_deg; })},
      {"uav.roll_deg",
       num([](Scenario& s) { return &s.nominal_uav.roll_deg; })},
      {"uav.yaw_deg", num([](Scenario& s) { return &s.nominal_uav.yaw_deg; })},
      {"tx.boresight_gain_dbi",
       num([](Scenario& s) { return &s.tx_pattern.boresight_gain_dbi; })},
      {"tx.hpbw_deg", num([](Scenario& s) { return &s.tx_pattern.hpbw_deg; })},
      {"tx.sidelobe_floor_db",
       num([](Scenario& s) { return &s.tx_pattern.sidelobe_floor_db; })},
      {"rx.boresight_gain_dbi",
       num([](Scenario& s) { return &s.rx_pattern.boresight_gain_dbi; })},
      {"rx.hpbw_deg", num([](Scenario& s) { return &s.rx_pattern.hpbw_deg; })},
      {"rx.sidelobe_floor_db",
       num([](Scenario& s) { return &s.rx_pattern.sidelobe_floor_db; })},
      {"channel.tx_power_dbm",
       num([](Scenario& s) { return &s.params.tx_power_dbm; })},
      {"channel.path_loss_exponent",
       num([](Scenario& s) { return &s.params.path_loss_exponent; })},
      {"channel.noise_dbm",
       num([](Scenario& s) { return &s.params.noise_dbm; })},
      {"channel.excess_loss_db",
       num([](Scenario& s) { return &s.params.excess_loss_db; })},
      {"channel.reference_distance_m",
       num([](Scenario& s) { return &s.params.reference_distance_m; })},
      {"channel.mode",
       KeyBinding{[](Scenario& s, const std::string& value,
                     const std::string& where) {
                    if (value == "full") {
                      s.mode = channel::ModelMode::Full;
                    } else if (value == "calibrated") {
                      s.mode = channel::ModelMode::Calibrated;
                    } else {
                      throw Error(ErrorKind::ParseError,
                                  where + ": channel.mode must be 'full' or "
                                          "'calibrated', got '" +
                                      value + "'");
                    }
                  },
                  [](const Scenario& s) {
                    return std::string(s.mode == channel::ModelMode::Full
                                           ? "full"
                                           : "calibrated");
                  }}},
      {"fading.scale_db", num([](Scenario& s) { return &s.fading.scale; })},
      {"fading.shape", num([](Scenario& s) { return &s.fading.shape; })},
      {"jitter.sigma_pos_m",
       num([](Scenario& s) { return &s.jitter.sigma_pos; })},
      {"jitter.sigma_ang_deg",
       num([](Scenario& s) { return &s.jitter.sigma_ang; })},
      {"jitter.mean_reversion_hz",
       num([](Scenario& s) { return &s.jitter.mean_reversion; })},
      {"jitter.dt_s", num([](Scenario& s) { return &s.jitter.dt_s; })},
      {"jitter.duration_s",
       num([](Scenario& s) { return &s.jitter.duration_s; })},
  };
  return table;
}

}  // namespace

Scenario default_scenario() {
  Scenario s;
  s.station.position_m = {0.0, 0.0, 1.5};
  s.station.boresight_elevation_deg = 8.0;
  s.station.boresight_azimuth_deg = 0.0;
  // Hovering on boresight at 10 m, receiver aimed back down the ray.
  const double el = 8.0 * std::numbers::pi / 180.0;
  s.nominal_uav.position_m = {
      0.0, format::snap_sig9(10.0 * std::cos(el)),
      format::snap_sig9(1.5 + 10.0 * std::sin(el))};
  s.nominal_uav.pitch_deg = -8.0;
  s.nominal_uav.roll_deg = 0.0;
  s.nominal_uav.yaw_deg = 180.0;
  // Pattern, channel, fading and jitter defaults come from the member
  // initializers.
  return s;
}

channel::Link Scenario::link() const {
  return {station, tx_pattern, rx_pattern, params, nominal_uav.pitch_deg,
          nominal_uav.yaw_deg};
}

void Scenario::validate() const {
  station.validate();
  nominal_uav.validate();
  tx_pattern.validate();
  rx_pattern.validate();
  params.validate();
  fading.validate();
  jitter.validate();
}

Scenario parse_scenario(std::istream& in, const std::string& name) {
  Scenario scenario = default_scenario();
  std::map<std::string, const KeyBinding*> keys;
  for (const auto& [key, binding] : key_table()) keys.emplace(key, &binding);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;

    const std::string where = name + ":" + std::to_string(line_no);
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ParseError,
                  where + ": expected 'key = value'");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw Error(ErrorKind::ParseError, where + ": unknown key '" + key + "'");
    }
    if (value.empty()) {
      throw Error(ErrorKind::ParseError,
                  where + ": missing value for '" + key + "'");
    }
    it->second->set(scenario, value, where);
  }

  try {
    scenario.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, name + ": " + e.what());
  }
  return scenario;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::IoError, "cannot open config: " + path.string());
  }
  return parse_scenario(in, path.filename().string());
}

std::string print_scenario(const Scenario& scenario) {
  std::ostringstream out;
  for (const auto& [key, binding] : key_table()) {
    out << key << " = " << binding.get(scenario) << '\n';
  }
  return out.str();
}

}  // namespace thzlink::config
