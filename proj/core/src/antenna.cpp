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

#include "thzlink/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "thzlink/errors.hpp"

namespace thzlink::antenna {

void AntennaPattern::validate() const {
  if (!(hpbw_deg > 0.0) || !std::isfinite(hpbw_deg)) {
    throw Error(ErrorKind::InvalidParameter, "antenna HPBW must be > 0 deg");
  }
  if (!std::isfinite(boresight_gain_dbi)) {
    throw Error(ErrorKind::InvalidParameter,
                "antenna boresight gain must be finite");
  }
  if (!(sidelobe_floor_db > 3.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "antenna side-lobe floor must be > 3 dB below boresight");
  }
}

double gain_dbi(const AntennaPattern& pattern, double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "off-boresight angle must lie in [0, 180] deg");
  }
  const double ratio = 2.0 * theta_deg / pattern.hpbw_deg;
  const double lobe = pattern.boresight_gain_dbi - 3.0 * ratio * ratio;
  return std::max(lobe, pattern.boresight_gain_dbi - pattern.sidelobe_floor_db);
}

double footprint_diameter_m(const AntennaPattern& pattern, double range_m) {
  if (!(range_m > 0.0)) {
    throw Error(ErrorKind::NonPositiveRange,
                "footprint range must be > 0 m");
  }
  const double half_rad = 0.5 * pattern.hpbw_deg * std::numbers::pi / 180.0;
  return 2.0 * range_m * std::tan(half_rad);
}

}  // namespace thzlink::antenna
