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

#ifndef THZLINK_ALIGNMENT_HPP
#define THZLINK_ALIGNMENT_HPP

#include <span>
#include <string>
#include <vector>

#include "thzlink/channel.hpp"

namespace thzlink::alignment {

/// TxOnly keeps the receiver perfectly tracking (its pattern contributes
/// no off-axis penalty); TxAndRx holds the receiver boresight at its
/// nominal orientation, so both patterns roll off with lateral offset.
enum class PatternConfig { TxOnly, TxAndRx };

struct AlignmentResult {
  double distance_m = 0.0;
  double hpbw_deg = 0.0;
  PatternConfig config = PatternConfig::TxOnly;
  double diameter_3db_m = 0.0;
};

/// Lateral offset, perpendicular to the boresight at the given range, at
/// which the mean model drops exactly 3 dB below the on-axis value.
/// Solved by bisection to 1e-9 m; the path-length growth of the offset is
/// part of the solve. The mean (fading-free) model defines the contour.
double three_db_radius_m(const channel::Link& link, double distance_m,
                         PatternConfig config);

/// Cross product of distances and beamwidths, distance-major row order.
/// Each row applies the row's HPBW to the transmit pattern (and, for
/// TxAndRx, the receive pattern too).
std::vector<AlignmentResult> sweep_3db(const channel::Link& link,
                                       std::span<const double> distances_m,
                                       std::span<const double> hpbws_deg,
                                       PatternConfig config);

/// Measured aligned-region diameter over the geometric HPBW footprint; a
/// shrinkage diagnostic (the measured flights give 0.42 m / 0.46 m).
double footprint_ratio(double measured_diameter_m, double hpbw_footprint_m);

std::string sweep_to_csv(std::span<const AlignmentResult> rows);

}  // namespace thzlink::alignment

#endif  // THZLINK_ALIGNMENT_HPP
