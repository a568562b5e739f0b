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

#ifndef THZLINK_CONFIG_HPP
#define THZLINK_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "thzlink/channel.hpp"
#include "thzlink/fading.hpp"
#include "thzlink/geometry.hpp"
#include "thzlink/trajectory.hpp"

namespace thzlink::config {

/// One simulation scenario: the measured-setup geometry and constants.
/// Defaults reproduce the documented setup (station feed tilted up 8 deg,
/// receiver tilted -8 deg, 5.7 deg HPBW at 25 dBi, 0 dBm transmit power,
/// alpha 1.7, -18 dBm noise, 6 dB excess loss, Weibull(5.01, 57.40)
/// fading in dB) with the UAV hovering on boresight at 10 m.
struct Scenario {
  geometry::StationPose station;
  geometry::UavPose nominal_uav;
  antenna::AntennaPattern tx_pattern;
  antenna::AntennaPattern rx_pattern;
  channel::ChannelParams params;
  channel::ModelMode mode = channel::ModelMode::Calibrated;
  fading::WeibullParams fading;
  trajectory::JitterParams jitter;

  channel::Link link() const;
  void validate() const;
};

Scenario default_scenario();

/// Plain `key = value` text, one key per line, '#' comments. Unknown keys
/// are rejected; invariant violations surface as Error{ParseError} with
/// file and line.
Scenario parse_scenario(std::istream& in, const std::string& name);
Scenario load_scenario(const std::filesystem::path& path);

/// Every key with its current value, parseable back into an equal
/// scenario (--print-config output).
std::string print_scenario(const Scenario& scenario);

}  // namespace thzlink::config

#endif  // THZLINK_CONFIG_HPP
