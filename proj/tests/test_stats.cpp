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

#include "thzlink/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "thzlink/errors.hpp"
#include "thzlink/rng.hpp"

using namespace thzlink;

TEST_CASE("empirical cdf rank construction") {
  const std::vector<double> samples{3.0, 1.0, 2.0};
  const auto cdf = stats::empirical_cdf(samples);
  REQUIRE(cdf.size() == 3);
  CHECK(cdf[0].value == 1.0);
  CHECK(cdf[0].probability == doctest::Approx(1.0 / 3.0));
  CHECK(cdf[1].value == 2.0);
  CHECK(cdf[1].probability == doctest::Approx(2.0 / 3.0));
  CHECK(cdf[2].value == 3.0);
  CHECK(cdf[2].probability == 1.0);
}

TEST_CASE("empirical cdf edge cases") {
  const std::vector<double> one{42.0};
  const auto single = stats::empirical_cdf(one);
  REQUIRE(single.size() == 1);
  CHECK(single[0].value == 42.0);
  CHECK(single[0].probability == 1.0);

  // ties keep the last rank
  const std::vector<double> tied{1.0, 1.0, 2.0};
  const auto cdf = stats::empirical_cdf(tied);
  REQUIRE(cdf.size() == 2);
  CHECK(cdf[0].value == 1.0);
  CHECK(cdf[0].probability == doctest::Approx(2.0 / 3.0));
  CHECK(cdf[1].probability == 1.0);

  CHECK_THROWS_AS(stats::empirical_cdf(std::vector<double>{}), Error);
}

TEST_CASE("pearson correlation basics") {
  const std::vector<double> x{0.0, 1.0, 2.0};

  SUBCASE("affine increasing gives exactly 1") {
    const std::vector<double> y{1.0, 3.0, 5.0};  // y = 2x + 1
    CHECK(stats::pearson_correlation(x, y) == doctest::Approx(1.0).epsilon(1e-14));
  }

  SUBCASE("negation gives -1") {
    const std::vector<double> y{0.0, -1.0, -2.0};
    CHECK(stats::pearson_correlation(x, y) ==
          doctest::Approx(-1.0).epsilon(1e-14));
  }

  SUBCASE("hand-computed value") {
    const std::vector<double> y{0.0, 1.0, 4.0};
    // r = 4 / sqrt(2 * 78/9)
    CHECK(stats::pearson_correlation(x, y) ==
          doctest::Approx(0.9607689228).epsilon(1e-9));
  }

  SUBCASE("errors") {
    CHECK_THROWS_AS(
        stats::pearson_correlation(x, std::vector<double>{1.0, 2.0}), Error);
    CHECK_THROWS_AS(
        stats::pearson_correlation(x, std::vector<double>{5.0, 5.0, 5.0}),
        Error);
    try {
      stats::pearson_correlation(x, std::vector<double>{5.0, 5.0, 5.0});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ZeroVariance);
    }
  }
}

TEST_CASE("pearson invariances") {
  Rng rng(99);
  std::vector<double> x(50), y(50);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = rng.normal();
    y[i] = 0.5 * x[i] + rng.normal();
  }
  const double r = stats::pearson_correlation(x, y);

  std::vector<double> x_affine(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) x_affine[i] = 3.5 * x[i] - 11.0;
  CHECK(stats::pearson_correlation(x_affine, y) ==
        doctest::Approx(r).epsilon(1e-12));

  std::vector<double> y_flipped(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) y_flipped[i] = -y[i];
  CHECK(stats::pearson_correlation(x, y_flipped) ==
        doctest::Approx(-r).epsilon(1e-12));
}

TEST_CASE("incomplete beta against boost reference") {
  // independent route: p-value from boost's students_t distribution
  for (const double t : {0.0, 0.3, 1.2, 2.5, 4.0, 9.7}) {
    for (const double dof : {1.0, 3.0, 8.0, 30.0, 998.0}) {
      const double ours = stats::student_t_two_tailed_p(t, dof);
      boost::math::students_t dist(dof);
      const double reference = 2.0 * boost::math::cdf(
                                         boost::math::complement(dist, t));
      CHECK(ours == doctest::Approx(reference).epsilon(1e-10));
    }
  }
}

TEST_CASE("p-values decrease as |r| grows at fixed n") {
  const double n = 40.0;
  double previous = 1.1;
  for (double r = 0.05; r < 0.95; r += 0.05) {
    const double t = r * std::sqrt((n - 2.0) / (1.0 - r * r));
    const double p = stats::student_t_two_tailed_p(t, n - 2.0);
    CHECK(p < previous);
    previous = p;
  }
}

TEST_CASE("ks statistic small cases") {
  SUBCASE("single sample at the model median") {
    const std::vector<double> s{0.5};
    CHECK(stats::ks_statistic(s, [](double x) { return x; }) ==
          doctest::Approx(0.5).epsilon(1e-14));
  }

  SUBCASE("two samples vs uniform") {
    const std::vector<double> s{0.25, 0.75};
    CHECK(stats::ks_statistic(s, [](double x) { return x; }) ==
          doctest::Approx(0.25).epsilon(1e-14));
  }

  SUBCASE("samples at the model quantiles i/(n+1)") {
    const std::size_t n = 9;
    std::vector<double> s;
    for (std::size_t i = 1; i <= n; ++i) {
      s.push_back(static_cast<double>(i) / (n + 1));
    }
    const double d = stats::ks_statistic(s, [](double x) { return x; });
    CHECK(d == doctest::Approx(1.0 / (n + 1)).epsilon(1e-12));
    CHECK(d <= 2.0 / (n + 1));
  }

  SUBCASE("empty input") {
    CHECK_THROWS_AS(
        stats::ks_statistic(std::vector<double>{}, [](double x) { return x; }),
        Error);
  }
}

TEST_CASE("ks statistic vanishes in probability under the true model") {
  std::vector<double> ds;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(1000 + trial);
    std::vector<double> s(10000);
    for (auto& v : s) v = rng.uniform01();
    ds.push_back(stats::ks_statistic(s, [](double x) { return x; }));
  }
  std::nth_element(ds.begin(), ds.begin() + 50, ds.end());
  CHECK(ds[50] < 0.02);
}

TEST_CASE("empirical cdf of model-transformed samples is uniform") {
  Rng rng(4711);
  std::vector<double> s(2000);
  for (auto& v : s) v = -std::log(rng.uniform01());  // unit exponential
  const auto exp_cdf = [](double x) { return 1.0 - std::exp(-x); };
  const double d_direct = stats::ks_statistic(s, exp_cdf);
  std::vector<double> u(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) u[i] = exp_cdf(s[i]);
  const double d_uniform = stats::ks_statistic(u, [](double x) { return x; });
  CHECK(d_direct == doctest::Approx(d_uniform).epsilon(1e-12));
}

namespace {

trajectory::FlightLog constructed_log(std::size_t n) {
  // power rides on the along-track (vertical-movement) offset only;
  // orientation jitter is independent noise
  trajectory::FlightLog log;
  Rng rng(31337);
  for (std::size_t i = 0; i < n; ++i) {
    trajectory::FlightSample s;
    s.t_s = 0.1 * static_cast<double>(i);
    const double a = 0.2 * rng.normal();   // along-track (y for azimuth 0)
    const double b = 0.1 * rng.normal();   // cross-track
    s.x_m = b;
    s.y_m = 10.0 + a;
    s.z_m = 2.0 + 0.05 * rng.normal();
    s.pitch_deg = -8.0 + 1.5 * rng.normal();
    s.roll_deg = 0.0;
    s.yaw_deg = 180.0 + 1.5 * rng.normal();
    s.power_dbm = 3.0 + 4.0 * a + 0.05 * rng.normal();
    log.samples.push_back(s);
  }
  return log;
}

}  // namespace

TEST_CASE("correlation matrix sign pattern on a constructed log") {
  const auto log = constructed_log(1000);
  geometry::StationPose station;
  station.position_m = {0, 0, 1.5};
  station.boresight_elevation_deg = 0.0;
  station.boresight_azimuth_deg = 0.0;
  geometry::UavPose nominal;
  nominal.position_m = {0, 10, 2.0};
  nominal.pitch_deg = -8.0;
  nominal.yaw_deg = 180.0;

  const auto report = stats::correlation_matrix(log, station, nominal);
  REQUIRE(report.variables.size() == 5);
  REQUIRE(report.r.size() == 5);
  CHECK(report.sample_count == 1000);

  const std::size_t vertical = 1, orientation = 3, power = 4;
  CHECK(report.variables[vertical] == "vertical_movement");
  CHECK(report.r[vertical][power] > 0.9);
  CHECK(report.significant[vertical][power]);
  CHECK(std::fabs(report.r[orientation][power]) < 0.2);
  CHECK_FALSE(report.significant[orientation][power]);

  // diagonal is exactly 1 with an undefined p
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(report.r[i][i] == 1.0);
    CHECK(std::isnan(report.p[i][i]));
  }
  // symmetry
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(report.r[i][j] == report.r[j][i]);
    }
  }
}

TEST_CASE("correlation matrix flags constant columns instead of aborting") {
  auto log = constructed_log(100);
  for (auto& s : log.samples) {
    s.z_m = 2.0;  // height exactly constant
  }
  geometry::StationPose station;
  station.position_m = {0, 0, 1.5};
  geometry::UavPose nominal;
  nominal.position_m = {0, 10, 2.0};
  const auto report = stats::correlation_matrix(log, station, nominal);
  const std::size_t height = 2, power = 4;
  CHECK(std::isnan(report.r[height][power]));
  CHECK(std::isnan(report.p[height][power]));
  CHECK_FALSE(report.significant[height][power]);
  // other pairs still intact
  CHECK_FALSE(std::isnan(report.r[1][power]));
}

TEST_CASE("correlation matrix needs 8 measured samples") {
  auto log = constructed_log(7);
  geometry::StationPose station;
  geometry::UavPose nominal;
  nominal.position_m = {0, 10, 2.0};
  CHECK_THROWS_AS(stats::correlation_matrix(log, station, nominal), Error);
}

TEST_CASE("identical columns correlate to exactly 1") {
  // feed power equal to the height column
  trajectory::FlightLog log;
  Rng rng(8);
  for (int i = 0; i < 64; ++i) {
    trajectory::FlightSample s;
    s.t_s = i;
    s.x_m = 0.1 * rng.normal();
    s.y_m = 10 + 0.1 * rng.normal();
    s.z_m = 2.0 + 0.1 * rng.normal();
    s.pitch_deg = -8.0;
    s.roll_deg = 0.0;
    s.yaw_deg = 180.0;
    s.power_dbm = s.z_m - 2.0;  // exactly the height offset
    log.samples.push_back(s);
  }
  geometry::StationPose station;
  station.position_m = {0, 0, 1.5};
  geometry::UavPose nominal;
  nominal.position_m = {0, 10, 2.0};
  nominal.pitch_deg = -8.0;
  nominal.yaw_deg = 180.0;
  const auto report = stats::correlation_matrix(log, station, nominal);
  CHECK(report.r[2][4] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report.significant[2][4]);
}

TEST_CASE("correlation report serializes NaN as null") {
  auto log = constructed_log(100);
  geometry::StationPose station;
  station.position_m = {0, 0, 1.5};
  geometry::UavPose nominal;
  nominal.position_m = {0, 10, 2.0};
  const auto report = stats::correlation_matrix(log, station, nominal);
  const std::string json = report.to_json();
  CHECK(json.find("null") != std::string::npos);       // diagonal p
  CHECK(json.find("schema_version") != std::string::npos);
  CHECK(json.find("nan") == std::string::npos);
}
