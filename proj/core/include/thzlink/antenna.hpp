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

#ifndef THZLINK_ANTENNA_HPP
#define THZLINK_ANTENNA_HPP

namespace thzlink::antenna {

/// Parametric main lobe of a lens-assisted horn: quadratic-in-dB
/// (Gaussian) rolloff clipped at a flat side-lobe floor.
struct AntennaPattern {
  double boresight_gain_dbi = 25.0;
  double hpbw_deg = 5.7;
  double sidelobe_floor_db = 30.0;  // below boresight; must exceed 3 dB

  void validate() const;
};

/// Gain at `theta_deg` off boresight, theta in [0, 180]:
///   max(G0 - 3 (2 theta / HPBW)^2, G0 - floor)
/// Exactly G0 at boresight, exactly G0 - 3 at HPBW/2.
double gain_dbi(const AntennaPattern& pattern, double theta_deg);

/// Half-power footprint diameter at range: 2 R tan(HPBW / 2).
/// Throws Error{NonPositiveRange} for range <= 0.
double footprint_diameter_m(const AntennaPattern& pattern, double range_m);

}  // namespace thzlink::antenna

#endif  // THZLINK_ANTENNA_HPP
