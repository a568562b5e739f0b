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
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "thzlink/alignment.hpp"
#include "thzlink/errors.hpp"
#include "thzlink/rng.hpp"

using namespace thzlink;
using channel::Link;
using channel::ModelMode;
using geometry::UavPose;
using geometry::Vec3;

namespace {

// Level link along +y (elevation 0) so lateral and height offsets are
// exactly perpendicular to the boresight.
Link level_link() {
  Link link;
  link.station.position_m = {0.0, 0.0, 1.5};
  link.station.boresight_elevation_deg = 0.0;
  link.station.boresight_azimuth_deg = 0.0;
  link.nominal_rx_pitch_deg = 0.0;
  link.nominal_rx_yaw_deg = 180.0;
  return link;
}

UavPose level_uav(double range_m) {
  UavPose uav;
  uav.position_m = {0.0, range_m, 1.5};
  uav.pitch_deg = 0.0;
  uav.roll_deg = 0.0;
  uav.yaw_deg = 180.0;
  return uav;
}

}  // namespace

TEST_CASE("mean SNR at the measured parameter set") {
  const Link link = level_link();

  SUBCASE("aligned at 10 m: 0 + 25 + 25 - 17 - 6 + 18") {
    CHECK(channel::mean_snr_db(link, level_uav(10.0), ModelMode::Full) ==
          doctest::Approx(45.0).epsilon(1e-12));
    CHECK(channel::mean_snr_db(link, level_uav(10.0), ModelMode::Calibrated) ==
          doctest::Approx(45.0).epsilon(1e-12));
  }

  SUBCASE("at the reference distance the log term vanishes") {
    CHECK(channel::mean_snr_db(link, level_uav(1.0), ModelMode::Full) ==
          doctest::Approx(62.0).epsilon(1e-12));
  }

  SUBCASE("below the reference distance is rejected") {
    CHECK_THROWS_AS(
        channel::mean_snr_db(link, level_uav(0.5), ModelMode::Full), Error);
    try {
      channel::mean_snr_db(link, level_uav(0.5), ModelMode::Full);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BelowReferenceDistance);
    }
  }
}

TEST_CASE("mode semantics: orientation error only matters in Full mode") {
  const Link link = level_link();
  UavPose uav = level_uav(10.0);
  uav.pitch_deg = link.rx_pattern.hpbw_deg / 2.0;  // half-HPBW pointing error

  const double full = channel::mean_snr_db(link, uav, ModelMode::Full);
  const double calibrated =
      channel::mean_snr_db(link, uav, ModelMode::Calibrated);
  CHECK(full == doctest::Approx(42.0).epsilon(1e-12));
  CHECK(calibrated == doctest::Approx(45.0).epsilon(1e-12));

  SUBCASE("modes agree exactly at the nominal orientation") {
    for (const double range : {2.0, 10.0, 50.0}) {
      const UavPose nominal_pose = level_uav(range);
      CHECK(channel::mean_snr_db(link, nominal_pose, ModelMode::Full) ==
            channel::mean_snr_db(link, nominal_pose, ModelMode::Calibrated));
    }
  }
}

TEST_CASE("dB decomposition properties") {
  Link link = level_link();
  const UavPose uav = level_uav(10.0);
  const double base = channel::mean_snr_db(link, uav, ModelMode::Full);

  SUBCASE("transmit power shifts the output one-for-one") {
    for (const double dx : {0.5, 3.0, -7.25}) {
      Link shifted = link;
      shifted.params.tx_power_dbm += dx;
      CHECK(channel::mean_snr_db(shifted, uav, ModelMode::Full) ==
            doctest::Approx(base + dx).epsilon(1e-12));
    }
  }

  SUBCASE("a decade of distance costs exactly 10 alpha dB") {
    const double far = channel::mean_snr_db(link, level_uav(100.0),
                                            ModelMode::Full);
    CHECK(base - far == doctest::Approx(10.0 * 1.7).epsilon(1e-12));
  }

  SUBCASE("strictly decreasing in distance at fixed angles") {
    double previous = channel::mean_snr_db(link, level_uav(2.0),
                                           ModelMode::Full);
    for (double d = 4.0; d <= 200.0; d *= 2.0) {
      const double snr = channel::mean_snr_db(link, level_uav(d),
                                              ModelMode::Full);
      CHECK(snr < previous);
      previous = snr;
    }
  }
}

TEST_CASE("off-axis penalty composes with the antenna lobe") {
  const Link link = level_link();
  const double range = 10.0;
  const double base =
      channel::mean_snr_db(link, level_uav(range), ModelMode::Full);
  // rotate the UAV around the station at constant range; keep the
  // receiver aimed straight back so only the transmit lobe moves
  for (const double theta_deg : {0.5, 1.0, 2.0, 2.85}) {
    const double theta = theta_deg * std::numbers::pi / 180.0;
    UavPose uav;
    uav.position_m = {range * std::sin(theta), range * std::cos(theta), 1.5};
    const Vec3 back =
        geometry::normalized(link.station.position_m - uav.position_m);
    uav.pitch_deg = std::asin(back.z) * 180.0 / std::numbers::pi;
    uav.yaw_deg = std::atan2(back.x, back.y) * 180.0 / std::numbers::pi;
    if (uav.yaw_deg < 0) uav.yaw_deg += 360.0;
    const double snr = channel::mean_snr_db(link, uav, ModelMode::Full);
    const double expected_penalty =
        3.0 * (2.0 * theta_deg / link.tx_pattern.hpbw_deg) *
        (2.0 * theta_deg / link.tx_pattern.hpbw_deg);
    CHECK(base - snr == doctest::Approx(expected_penalty).epsilon(1e-9));
  }
}

TEST_CASE("sampled SNR subtracts one Weibull draw") {
  const Link link = level_link();
  const UavPose uav = level_uav(10.0);
  const fading::WeibullParams hovering{5.01, 57.40};

  SUBCASE("decomposition is exact for the same draw") {
    Rng rng(404);
    Rng shadow(404);
    const double xi = fading::weibull_sample(hovering, shadow);
    const double sampled =
        channel::sample_snr_db(link, uav, ModelMode::Full, hovering, rng);
    CHECK(sampled == 45.0 - xi);
  }

  SUBCASE("huge shape concentrates draws at the scale") {
    const fading::WeibullParams concentrated{5.0, 1e6};
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
      const double sampled = channel::sample_snr_db(link, uav, ModelMode::Full,
                                                    concentrated, rng);
      CHECK(std::fabs(sampled - (45.0 - 5.0)) < 1e-3);
    }
  }

  SUBCASE("long-run mean sits one Weibull mean below the deterministic value") {
    Rng rng(2718);
    std::vector<double> draws(100000);
    for (auto& v : draws) {
      v = channel::sample_snr_db(link, uav, ModelMode::Full, hovering, rng);
    }
    CHECK(oracles::mean(draws) == doctest::Approx(45.0 - 4.961).epsilon(0.001));
  }
}

TEST_CASE("power map") {
  const Link link = level_link();
  const UavPose nominal = level_uav(10.0);

  SUBCASE("1x1 grid equals the point evaluation") {
    const channel::AxisSpec a{"b", 0.0, 0.0, 1.0};
    const channel::AxisSpec b{"height", 0.0, 0.0, 1.0};
    const auto map =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
    REQUIRE(map.grid_db.size() == 1);
    CHECK(map.at(0, 0) ==
          channel::mean_snr_db(link, nominal, ModelMode::Calibrated));
  }

  SUBCASE("symmetric axes reflect symmetrically") {
    const channel::AxisSpec a{"b", -0.3, 0.3, 0.05};
    const channel::AxisSpec b{"height", -0.3, 0.3, 0.05};
    const auto map =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
    const std::size_t n1 = a.count(), n2 = b.count();
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        CHECK(map.at(i, j) ==
              doctest::Approx(map.at(n1 - 1 - i, j)).epsilon(1e-9));
        CHECK(map.at(i, j) ==
              doctest::Approx(map.at(i, n2 - 1 - j)).epsilon(1e-9));
      }
    }
  }

  SUBCASE("grid inscribed in the 3-dB disk spans at most 3 dB") {
    const double radius = alignment::three_db_radius_m(
        link, 10.0, alignment::PatternConfig::TxAndRx);
    const double half = radius / std::sqrt(2.0) * 0.999;
    const channel::AxisSpec a{"b", -half, half, half / 8.0};
    const channel::AxisSpec b{"height", -half, half, half / 8.0};
    const auto map =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
    double lo = 1e300, hi = -1e300;
    for (double v : map.grid_db) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(hi - lo <= 3.0 + 1e-9);
  }

  SUBCASE("sampled maps are bit-identical under the same seed") {
    const channel::AxisSpec a{"a", -0.2, 0.2, 0.1};
    const channel::AxisSpec b{"b", -0.2, 0.2, 0.1};
    const fading::WeibullParams hovering{5.01, 57.40};
    Rng r1(5), r2(5);
    const auto m1 = channel::power_map(link, nominal, a, b,
                                       ModelMode::Calibrated, hovering, &r1);
    const auto m2 = channel::power_map(link, nominal, a, b,
                                       ModelMode::Calibrated, hovering, &r2);
    CHECK(m1.grid_db == m2.grid_db);
  }

  SUBCASE("per-cell failures carry the cell index") {
    // a-axis reaching back to the station drops below the reference
    const channel::AxisSpec a{"a", -10.0, 0.0, 5.0};
    const channel::AxisSpec b{"b", 0.0, 0.0, 1.0};
    try {
      channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
      FAIL("expected BelowReferenceDistance");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::BelowReferenceDistance);
      CHECK(std::string(e.what()).find("cell (0, 0)") != std::string::npos);
    }
  }

  SUBCASE("csv layout is row-major with the exact header") {
    const channel::AxisSpec a{"b", 0.0, 0.1, 0.1};
    const channel::AxisSpec b{"height", 0.0, 0.0, 1.0};
    const auto map =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
    const std::string csv = map.to_csv();
    CHECK(csv.rfind("axis1,axis2,snr_db\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);  // header + 2 cells
  }
}

TEST_CASE("difference maps") {
  const Link link = level_link();
  const UavPose nominal = level_uav(10.0);
  const channel::AxisSpec a{"b", -0.2, 0.2, 0.05};
  const channel::AxisSpec b{"height", -0.2, 0.2, 0.05};

  SUBCASE("self-difference is identically zero") {
    const auto map =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
    const auto diff = channel::difference_map(map, map);
    CHECK(diff.max_abs_db == 0.0);
    CHECK(diff.mean_abs_db == 0.0);
  }

  SUBCASE("axis mismatch is rejected") {
    const channel::AxisSpec other{"height", -0.2, 0.2, 0.1};
    const auto m1 =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
    const auto m2 =
        channel::power_map(link, nominal, a, other, ModelMode::Calibrated);
    CHECK_THROWS_AS(channel::difference_map(m1, m2), Error);
  }

  SUBCASE("doubled-HPBW orientation error costs at least 20 dB in Full mode") {
    UavPose skewed = nominal;
    skewed.pitch_deg = 2.0 * link.rx_pattern.hpbw_deg;  // 2x HPBW error
    const auto full = channel::power_map(link, skewed, a, b, ModelMode::Full);
    const auto calibrated =
        channel::power_map(link, skewed, a, b, ModelMode::Calibrated);
    const auto diff = channel::difference_map(calibrated, full);
    for (double v : diff.map.grid_db) CHECK(v >= 20.0);
  }

  SUBCASE("calibrated model vs synthetic mean-centered measurements") {
    // Synthetic "measured" map: calibrated mean plus re-centered fading
    const fading::WeibullParams hovering{5.01, 57.40};
    const double mean_fading =
        hovering.scale * oracles::gamma_by_quadrature(1.0 + 1.0 / hovering.shape);
    Rng rng(31);
    auto measured =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated, hovering,
                           &rng);
    for (auto& cell : measured.grid_db) cell += mean_fading;
    const auto predicted =
        channel::power_map(link, nominal, a, b, ModelMode::Calibrated);
    const auto diff = channel::difference_map(measured, predicted);
    CHECK(diff.mean_abs_db < 2.0);
  }
}

TEST_CASE("path-loss exponent fit") {
  const Link link = level_link();

  SUBCASE("noise-free synthetic log recovers alpha exactly") {
    trajectory::FlightLog log;
    for (int i = 0; i < 40; ++i) {
      const double range = 2.0 + 0.5 * i;
      trajectory::FlightSample s;
      s.t_s = i;
      s.y_m = range;
      s.z_m = 1.5;
      s.pitch_deg = 0.0;
      s.yaw_deg = 180.0;
      s.power_dbm =
          channel::mean_snr_db(link, level_uav(range), ModelMode::Calibrated);
      log.samples.push_back(s);
    }
    const auto fit =
        channel::fit_path_loss_exponent(log, link, ModelMode::Calibrated);
    CHECK(fit.alpha == doctest::Approx(1.7).epsilon(1e-6));
    CHECK(fit.residual_rms_db < 1e-9);
  }

  SUBCASE("fading-averaged recovery within 0.1") {
    const fading::WeibullParams hovering{5.01, 57.40};
    Rng rng(12);
    trajectory::FlightLog log;
    for (int i = 0; i < 1000; ++i) {
      const double range = 2.0 + 0.03 * i;
      trajectory::FlightSample s;
      s.t_s = i;
      s.y_m = range;
      s.z_m = 1.5;
      s.pitch_deg = 0.0;
      s.yaw_deg = 180.0;
      s.power_dbm = channel::sample_snr_db(link, level_uav(range),
                                           ModelMode::Calibrated, hovering, rng);
      log.samples.push_back(s);
    }
    const auto fit =
        channel::fit_path_loss_exponent(log, link, ModelMode::Calibrated);
    CHECK(fit.alpha == doctest::Approx(1.7).epsilon(0.1 / 1.7));
  }

  SUBCASE("single-distance log has insufficient spread") {
    trajectory::FlightLog log;
    for (int i = 0; i < 20; ++i) {
      trajectory::FlightSample s;
      s.t_s = i;
      s.y_m = 10.0;
      s.z_m = 1.5;
      s.pitch_deg = 0.0;
      s.yaw_deg = 180.0;
      s.power_dbm = 45.0;
      log.samples.push_back(s);
    }
    try {
      channel::fit_path_loss_exponent(log, link, ModelMode::Calibrated);
      FAIL("expected InsufficientSpread");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InsufficientSpread);
    }
  }
}

TEST_CASE("prediction over a log") {
  const Link link = level_link();

  SUBCASE("single aligned sample") {
    trajectory::FlightLog log;
    trajectory::FlightSample s;
    s.t_s = 0.0;
    s.y_m = 10.0;
    s.z_m = 1.5;
    s.pitch_deg = 0.0;
    s.yaw_deg = 180.0;
    log.samples.push_back(s);
    const auto rows =
        channel::predict_over_log(log, link, ModelMode::Calibrated);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].predicted_snr_db == doctest::Approx(45.0).epsilon(1e-12));
    CHECK_FALSE(rows[0].residual_db.has_value());
  }

  SUBCASE("model-generated log round-trips to zero residuals") {
    trajectory::FlightLog log;
    Rng rng(9);
    for (int i = 0; i < 50; ++i) {
      trajectory::FlightSample s;
      s.t_s = 0.1 * i;
      s.x_m = 0.1 * rng.normal();
      s.y_m = 10.0 + 0.1 * rng.normal();
      s.z_m = 1.5 + 0.1 * rng.normal();
      s.pitch_deg = 0.0;
      s.yaw_deg = 180.0;
      s.power_dbm =
          channel::mean_snr_db(link, s.pose(), ModelMode::Calibrated);
      log.samples.push_back(s);
    }
    const auto rows =
        channel::predict_over_log(log, link, ModelMode::Calibrated);
    for (const auto& r : rows) {
      REQUIRE(r.residual_db.has_value());
      CHECK(std::fabs(*r.residual_db) < 1e-9);
    }
  }

  SUBCASE("fading residual spread matches the Weibull moments within 20%") {
    const fading::WeibullParams hovering{5.01, 57.40};
    Rng rng(33);
    trajectory::FlightLog log;
    for (int i = 0; i < 5000; ++i) {
      trajectory::FlightSample s;
      s.t_s = 0.1 * i;
      s.y_m = 10.0;
      s.z_m = 1.5;
      s.pitch_deg = 0.0;
      s.yaw_deg = 180.0;
      s.power_dbm = channel::sample_snr_db(link, s.pose(),
                                           ModelMode::Calibrated, hovering, rng);
      log.samples.push_back(s);
    }
    const auto rows =
        channel::predict_over_log(log, link, ModelMode::Calibrated);
    std::vector<double> residuals;
    for (const auto& r : rows) residuals.push_back(*r.residual_db);
    // Weibull std via the Gamma oracle
    const double g1 = oracles::gamma_by_quadrature(1.0 + 1.0 / hovering.shape);
    const double g2 = oracles::gamma_by_quadrature(1.0 + 2.0 / hovering.shape);
    const double weibull_std = hovering.scale * std::sqrt(g2 - g1 * g1);
    CHECK(oracles::sample_std(residuals) ==
          doctest::Approx(weibull_std).epsilon(0.20));
  }
}
