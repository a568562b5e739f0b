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
#include <limits>

#include "json.hpp"
#include "thzlink/errors.hpp"
#include "thzlink/format.hpp"

namespace thzlink::stats {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Continued fraction for the incomplete beta (Lentz's method).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  constexpr int kMaxIter = 500;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorKind::NoConvergence,
              "incomplete beta continued fraction did not converge");
}

}  // namespace

std::vector<CdfPoint> empirical_cdf(std::span<const double> samples) {
  if (samples.empty()) {
    throw Error(ErrorKind::EmptySamples, "empirical CDF of an empty sample set");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  std::vector<CdfPoint> points;
  points.reserve(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    // Collapse ties onto the last rank so the step is right-continuous.
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    points.push_back({sorted[i], static_cast<double>(i + 1) / n});
  }
  return points;
}

double pearson_correlation(std::span<const double> x,
                           std::span<const double> y) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "correlation requires series of equal length");
  }
  if (x.size() < 3) {
    throw Error(ErrorKind::InvalidParameter,
                "correlation requires at least 3 pairs");
  }
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorKind::ZeroVariance,
                "correlation undefined for a constant series");
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return std::clamp(r, -1.0, 1.0);
}

double ks_statistic_from_model_values(
    std::span<const double> sorted_model_cdf) {
  if (sorted_model_cdf.empty()) {
    throw Error(ErrorKind::EmptySamples, "KS statistic of an empty sample set");
  }
  const double n = static_cast<double>(sorted_model_cdf.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_model_cdf.size(); ++i) {
    const double f = sorted_model_cdf[i];
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::fabs(static_cast<double>(i) / n - f));
  }
  return d;
}

double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& model_cdf) {
  if (samples.empty()) {
    throw Error(ErrorKind::EmptySamples, "KS statistic of an empty sample set");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> f(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) f[i] = model_cdf(sorted[i]);
  return ks_statistic_from_model_values(f);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "incomplete beta requires a > 0 and b > 0");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed_p(double t, double dof) {
  if (!(dof > 0.0)) {
    throw Error(ErrorKind::InvalidParameter,
                "Student-t requires positive degrees of freedom");
  }
  if (std::isinf(t)) return 0.0;
  const double x = dof / (dof + t * t);
  return regularized_incomplete_beta(0.5 * dof, 0.5, x);
}

CorrelationReport correlation_matrix(const trajectory::FlightLog& log,
                                     const geometry::StationPose& station,
                                     const geometry::UavPose& nominal) {
  log.validate();
  std::vector<double> horiz, vert, height, orient, power;
  const geometry::Vec3 nominal_boresight = nominal.boresight();
  const geometry::LinkGeometry nominal_geom =
      geometry::link_geometry(station, nominal);
  for (const auto& s : log.samples) {
    if (!s.power_dbm.has_value()) continue;
    const geometry::LinkGeometry g =
        geometry::link_geometry(station, s.pose());
    vert.push_back(g.along_track_m - nominal_geom.along_track_m);
    horiz.push_back(g.cross_track_m - nominal_geom.cross_track_m);
    height.push_back(s.z_m - nominal.position_m.z);
    orient.push_back(
        geometry::angle_between_deg(s.pose().boresight(), nominal_boresight));
    power.push_back(*s.power_dbm);
  }
  if (power.size() < 8) {
    throw Error(ErrorKind::InvalidParameter,
                "correlation matrix requires at least 8 measured samples");
  }

  const std::vector<std::vector<double>*> columns{&horiz, &vert, &height,
                                                  &orient, &power};
  const std::size_t k = columns.size();
  const std::size_t n = power.size();

  CorrelationReport report;
  report.variables = {"horizontal_movement", "vertical_movement", "height",
                      "antenna_orientation", "power"};
  report.sample_count = n;
  report.r.assign(k, std::vector<double>(k, kNan));
  report.p.assign(k, std::vector<double>(k, kNan));
  report.significant.assign(k, std::vector<bool>(k, false));

  for (std::size_t i = 0; i < k; ++i) {
    report.r[i][i] = 1.0;
    for (std::size_t j = i + 1; j < k; ++j) {
      double r;
      try {
        r = pearson_correlation(*columns[i], *columns[j]);
      } catch (const Error&) {
        continue;  // leave the pair flagged as NaN
      }
      double p;
      const double denom = 1.0 - r * r;
      if (denom <= 0.0) {
        p = 0.0;
      } else {
        const double t = r * std::sqrt((static_cast<double>(n) - 2.0) / denom);
        p = student_t_two_tailed_p(t, static_cast<double>(n) - 2.0);
      }
      report.r[i][j] = report.r[j][i] = r;
      report.p[i][j] = report.p[j][i] = p;
      const bool sig = p < 0.01;
      report.significant[i][j] = sig;
      report.significant[j][i] = sig;
    }
  }
  return report;
}

std::string CorrelationReport::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = "1";
  doc["variables"] = variables;
  doc["n"] = sample_count;
  auto matrix = [](const std::vector<std::vector<double>>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : m) {
      nlohmann::json r = nlohmann::json::array();
      for (double v : row) r.push_back(format::snap_sig9(v));  // NaN -> null
      rows.push_back(r);
    }
    return rows;
  };
  doc["r"] = matrix(r);
  doc["p"] = matrix(p);
  doc["significant_at_0_01"] = significant;
  return doc.dump(2) + "\n";
}

}  // namespace thzlink::stats
