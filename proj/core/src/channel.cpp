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

#include "thzlink/channel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "thzlink/errors.hpp"
#include "thzlink/format.hpp"

namespace thzlink::channel {

namespace {

geometry::Vec3 axis_direction(const std::string& name,
                              const geometry::StationPose& station) {
  const double az =
      station.boresight_azimuth_deg * std::numbers::pi / 180.0;
  if (name == "a") return {std::sin(az), std::cos(az), 0.0};
  if (name == "b") return {std::cos(az), -std::sin(az), 0.0};
  if (name == "height") return {0.0, 0.0, 1.0};
  throw Error(ErrorKind::InvalidParameter,
              "axis name must be one of a, b, height; got '" + name + "'");
}

}  // namespace

void ChannelParams::validate() const {
  if (!(path_loss_exponent > 0.0) || !std::isfinite(path_loss_exponent)) {
    throw Error(ErrorKind::InvalidParameter,
                "path-loss exponent must be > 0");
  }
  if (!(reference_distance_m > 0.0) || !std::isfinite(reference_distance_m)) {
    throw Error(ErrorKind::InvalidParameter,
                "reference distance must be > 0 m");
  }
  if (!std::isfinite(tx_power_dbm) || !std::isfinite(noise_dbm) ||
      !std::isfinite(excess_loss_db)) {
    throw Error(ErrorKind::InvalidParameter,
                "channel powers and losses must be finite");
  }
}

double mean_snr_db(const Link& link, const geometry::UavPose& uav,
                   ModelMode mode) {
  const double d = geometry::link_distance(link.station, uav);
  if (d < link.params.reference_distance_m) {
    throw Error(ErrorKind::BelowReferenceDistance,
                "link distance " + format::sig9(d) +
                    " m is below the reference distance");
  }

  const geometry::Vec3 ray = uav.position_m - link.station.position_m;
  const double theta_tx =
      geometry::angle_between_deg(link.station.boresight(), ray);
  geometry::Vec3 rx_boresight;
  if (mode == ModelMode::Full) {
    rx_boresight = uav.boresight();
  } else {
    rx_boresight = geometry::direction_from_azimuth_elevation(
        link.nominal_rx_yaw_deg, link.nominal_rx_pitch_deg);
  }
  const double theta_rx = geometry::angle_between_deg(rx_boresight, ray * -1.0);

  return link.params.tx_power_dbm + gain_dbi(link.tx_pattern, theta_tx) +
         gain_dbi(link.rx_pattern, theta_rx) -
         10.0 * link.params.path_loss_exponent *
             std::log10(d / link.params.reference_distance_m) -
         link.params.excess_loss_db - link.params.noise_dbm;
}

double sample_snr_db(const Link& link, const geometry::UavPose& uav,
                     ModelMode mode, const fading::WeibullParams& fading,
                     Rng& rng) {
  return mean_snr_db(link, uav, mode) - fading::weibull_sample(fading, rng);
}

std::size_t AxisSpec::count() const {
  return static_cast<std::size_t>(
             std::floor((max - min) / step + 1e-9)) + 1;
}

void AxisSpec::validate() const {
  if (name != "a" && name != "b" && name != "height") {
    throw Error(ErrorKind::InvalidParameter,
                "axis name must be one of a, b, height; got '" + name + "'");
  }
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw Error(ErrorKind::InvalidParameter, "axis step must be > 0");
  }
  if (!(max >= min) || !std::isfinite(min) || !std::isfinite(max)) {
    throw Error(ErrorKind::InvalidParameter,
                "axis span must be finite with max >= min");
  }
}

PowerMap power_map(const Link& link, const geometry::UavPose& nominal_uav,
                   const AxisSpec& axis1, const AxisSpec& axis2,
                   ModelMode mode,
                   const std::optional<fading::WeibullParams>& fading,
                   Rng* rng) {
  axis1.validate();
  axis2.validate();
  if (fading.has_value() && rng == nullptr) {
    throw Error(ErrorKind::InvalidParameter,
                "sampled power map needs a seeded generator");
  }
  const geometry::Vec3 dir1 = axis_direction(axis1.name, link.station);
  const geometry::Vec3 dir2 = axis_direction(axis2.name, link.station);

  PowerMap map;
  map.axis1 = axis1;
  map.axis2 = axis2;
  map.mode = mode;
  map.grid_db.resize(axis1.count() * axis2.count());
  for (std::size_t i = 0; i < axis1.count(); ++i) {
    for (std::size_t j = 0; j < axis2.count(); ++j) {
      geometry::UavPose uav = nominal_uav;
      uav.position_m = nominal_uav.position_m + dir1 * axis1.value(i) +
                       dir2 * axis2.value(j);
      try {
        map.grid_db[i * axis2.count() + j] =
            fading.has_value()
                ? sample_snr_db(link, uav, mode, *fading, *rng)
                : mean_snr_db(link, uav, mode);
      } catch (const Error& e) {
        throw Error(e.kind(), std::string(e.what()) + " at cell (" +
                                  std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
      }
    }
  }
  return map;
}

MapDifference difference_map(const PowerMap& a, const PowerMap& b) {
  if (!(a.axis1 == b.axis1) || !(a.axis2 == b.axis2)) {
    throw Error(ErrorKind::AxisMismatch,
                "difference of maps with different axis specs");
  }
  MapDifference out;
  out.map.axis1 = a.axis1;
  out.map.axis2 = a.axis2;
  out.map.mode = a.mode;
  out.map.grid_db.resize(a.grid_db.size());
  double sum_abs = 0.0;
  for (std::size_t i = 0; i < a.grid_db.size(); ++i) {
    const double d = a.grid_db[i] - b.grid_db[i];
    out.map.grid_db[i] = d;
    sum_abs += std::fabs(d);
    out.max_abs_db = std::max(out.max_abs_db, std::fabs(d));
  }
  out.mean_abs_db = sum_abs / static_cast<double>(a.grid_db.size());
  return out;
}

std::string PowerMap::to_csv() const {
  std::ostringstream out;
  out << "axis1,axis2,snr_db\n";
  for (std::size_t i = 0; i < axis1.count(); ++i) {
    for (std::size_t j = 0; j < axis2.count(); ++j) {
      out << format::sig9(axis1.value(i)) << ','
          << format::sig9(axis2.value(j)) << ',' << format::sig9(at(i, j))
          << '\n';
    }
  }
  return out.str();
}

std::string PowerMap::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = "1";
  doc["mode"] = mode == ModelMode::Full ? "full" : "calibrated";
  auto axis = [](const AxisSpec& a) {
    return nlohmann::json{{"name", a.name},
                          {"min", format::snap_sig9(a.min)},
                          {"max", format::snap_sig9(a.max)},
                          {"step", format::snap_sig9(a.step)},
                          {"count", a.count()}};
  };
  doc["axes"] = nlohmann::json::array({axis(axis1), axis(axis2)});
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < axis1.count(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < axis2.count(); ++j) {
      row.push_back(format::snap_sig9(at(i, j)));
    }
    rows.push_back(row);
  }
  doc["snr_db"] = rows;
  return doc.dump(2) + "\n";
}

PathLossFit fit_path_loss_exponent(const trajectory::FlightLog& log,
                                   const Link& link, ModelMode mode) {
  log.validate();
  std::vector<double> regressor;  // -10 log10(d / d_ref)
  std::vector<double> response;   // measured minus non-distance terms
  for (const auto& s : log.samples) {
    if (!s.power_dbm.has_value()) continue;
    const geometry::UavPose uav = s.pose();
    const double d = geometry::link_distance(link.station, uav);
    if (d < link.params.reference_distance_m) {
      throw Error(ErrorKind::BelowReferenceDistance,
                  "log sample below the reference distance");
    }
    const geometry::Vec3 ray = uav.position_m - link.station.position_m;
    const double theta_tx =
        geometry::angle_between_deg(link.station.boresight(), ray);
    const geometry::Vec3 rx_boresight =
        mode == ModelMode::Full
            ? uav.boresight()
            : geometry::direction_from_azimuth_elevation(
                  link.nominal_rx_yaw_deg, link.nominal_rx_pitch_deg);
    const double theta_rx =
        geometry::angle_between_deg(rx_boresight, ray * -1.0);
    const double fixed_terms = link.params.tx_power_dbm +
                               gain_dbi(link.tx_pattern, theta_tx) +
                               gain_dbi(link.rx_pattern, theta_rx) -
                               link.params.excess_loss_db -
                               link.params.noise_dbm;
    regressor.push_back(
        -10.0 * std::log10(d / link.params.reference_distance_m));
    response.push_back(*s.power_dbm - fixed_terms);
  }
  if (regressor.size() < 8) {
    throw Error(ErrorKind::InvalidParameter,
                "path-loss fit requires at least 8 measured samples");
  }

  const double n = static_cast<double>(regressor.size());
  double mg = 0.0, my = 0.0;
  for (std::size_t i = 0; i < regressor.size(); ++i) {
    mg += regressor[i];
    my += response[i];
  }
  mg /= n;
  my /= n;
  double sgg = 0.0, sgy = 0.0;
  for (std::size_t i = 0; i < regressor.size(); ++i) {
    sgg += (regressor[i] - mg) * (regressor[i] - mg);
    sgy += (regressor[i] - mg) * (response[i] - my);
  }
  if (sgg == 0.0) {
    throw Error(ErrorKind::InsufficientSpread,
                "path-loss fit needs at least two distinct distances");
  }

  PathLossFit fit;
  fit.alpha = sgy / sgg;
  fit.intercept_db = my - fit.alpha * mg;
  double ss = 0.0;
  for (std::size_t i = 0; i < regressor.size(); ++i) {
    const double r = response[i] - (fit.intercept_db + fit.alpha * regressor[i]);
    ss += r * r;
  }
  fit.residual_rms_db = std::sqrt(ss / n);
  return fit;
}

std::vector<Prediction> predict_over_log(
    const trajectory::FlightLog& log, const Link& link, ModelMode mode,
    const std::optional<fading::WeibullParams>& fading, Rng* rng) {
  log.validate();
  if (fading.has_value() && rng == nullptr) {
    throw Error(ErrorKind::InvalidParameter,
                "sampled prediction needs a seeded generator");
  }
  std::vector<Prediction> out;
  out.reserve(log.samples.size());
  for (std::size_t i = 0; i < log.samples.size(); ++i) {
    const auto& s = log.samples[i];
    Prediction p;
    p.t_s = s.t_s;
    try {
      p.predicted_snr_db =
          fading.has_value()
              ? sample_snr_db(link, s.pose(), mode, *fading, *rng)
              : mean_snr_db(link, s.pose(), mode);
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(e.what()) + " at sample " +
                                std::to_string(i));
    }
    if (s.power_dbm.has_value()) {
      p.measured_dbm = s.power_dbm;
      p.residual_db = *s.power_dbm - p.predicted_snr_db;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace thzlink::channel
