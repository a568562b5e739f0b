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

#ifndef THZLINK_CHANNEL_HPP
#define THZLINK_CHANNEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "thzlink/antenna.hpp"
#include "thzlink/fading.hpp"
#include "thzlink/geometry.hpp"
#include "thzlink/rng.hpp"
#include "thzlink/trajectory.hpp"

namespace thzlink::channel {

struct ChannelParams {
  double tx_power_dbm = 0.0;
  double path_loss_exponent = 1.7;  // boresight-assisted regime, below free space
  double noise_dbm = -18.0;
  double excess_loss_db = 6.0;  // frequency-dependent loss, one opaque constant
  double reference_distance_m = 1.0;

  void validate() const;
};

/// Full evaluates the receiver off-boresight angle from the instantaneous
/// pose; Calibrated uses the nominal receiver boresight instead, after the
/// correlation analysis showed orientation jitter does not move the power.
/// Positional geometry is instantaneous in both modes.
enum class ModelMode { Full, Calibrated };

/// Fixed ends of a link: station, patterns, channel constants and the
/// nominal receiver orientation that Calibrated mode falls back to.
struct Link {
  geometry::StationPose station;
  antenna::AntennaPattern tx_pattern;
  antenna::AntennaPattern rx_pattern;
  ChannelParams params;
  double nominal_rx_pitch_deg = -8.0;
  double nominal_rx_yaw_deg = 180.0;
};

/// SNR-like power level in dB:
///   P_T + G_tx(theta_tx) + G_rx(theta_rx) - 10 alpha log10(d/d_ref)
///   - eta - N
/// Throws Error{BelowReferenceDistance} when d < d_ref.
double mean_snr_db(const Link& link, const geometry::UavPose& uav,
                   ModelMode mode);

/// mean_snr_db minus one Weibull draw (fading expressed as a dB loss).
double sample_snr_db(const Link& link, const geometry::UavPose& uav,
                     ModelMode mode, const fading::WeibullParams& fading,
                     Rng& rng);

struct AxisSpec {
  std::string name;  // one of "a", "b", "height"
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  std::size_t count() const;
  double value(std::size_t index) const { return min + step * index; }
  bool operator==(const AxisSpec&) const = default;
  void validate() const;
};

/// SNR over a grid of UAV offsets from the nominal pose. Row-major:
/// axis1 outer, axis2 inner.
struct PowerMap {
  AxisSpec axis1;
  AxisSpec axis2;
  ModelMode mode = ModelMode::Calibrated;
  std::vector<double> grid_db;

  double at(std::size_t i, std::size_t j) const {
    return grid_db[i * axis2.count() + j];
  }
  std::string to_csv() const;
  std::string to_json() const;
};

/// Axis offsets move the UAV from the nominal pose along the a / b track
/// directions or straight up; orientation stays nominal. A per-cell
/// failure is rethrown with the offending cell index.
PowerMap power_map(const Link& link, const geometry::UavPose& nominal_uav,
                   const AxisSpec& axis1, const AxisSpec& axis2,
                   ModelMode mode,
                   const std::optional<fading::WeibullParams>& fading = {},
                   Rng* rng = nullptr);

struct MapDifference {
  PowerMap map;  // cellwise a - b
  double max_abs_db = 0.0;
  double mean_abs_db = 0.0;
};

/// Cellwise difference of two maps with identical axis specs.
/// Throws Error{AxisMismatch} otherwise.
MapDifference difference_map(const PowerMap& a, const PowerMap& b);

struct PathLossFit {
  double alpha = 0.0;
  double intercept_db = 0.0;  // absorbs any constant bias, e.g. mean fading
  double residual_rms_db = 0.0;
};

/// Least squares of (measured - all non-distance dB terms) against
/// -10 log10(d/d_ref) over the log's measured samples; the slope is the
/// path-loss exponent. Requires >= 8 measured samples and at least two
/// distinct distances (Error{InsufficientSpread} otherwise).
PathLossFit fit_path_loss_exponent(const trajectory::FlightLog& log,
                                   const Link& link, ModelMode mode);

struct Prediction {
  double t_s = 0.0;
  double predicted_snr_db = 0.0;
  std::optional<double> measured_dbm;
  std::optional<double> residual_db;  // measured - predicted
};

/// Per-sample channel evaluation over a flight log. Errors are rethrown
/// with the sample index.
std::vector<Prediction> predict_over_log(
    const trajectory::FlightLog& log, const Link& link, ModelMode mode,
    const std::optional<fading::WeibullParams>& fading = {},
    Rng* rng = nullptr);

}  // namespace thzlink::channel

#endif  // THZLINK_CHANNEL_HPP
