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

#include "thzlink/fading.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "thzlink/errors.hpp"
#include "thzlink/format.hpp"
#include "thzlink/stats.hpp"

namespace thzlink::fading {

namespace {

constexpr int kMleIterationCap = 200;
constexpr double kMleShapeLo = 1e-3;
constexpr double kMleShapeHi = 1e3;
constexpr double kMleResidualTol = 1e-10;
constexpr double kRicianCdfTol = 1e-8;

void check_fit_input(std::span<const double> samples, std::size_t minimum) {
  if (samples.size() < minimum) {
    throw Error(ErrorKind::InvalidParameter,
                "fit requires at least " + std::to_string(minimum) +
                    " samples, got " + std::to_string(samples.size()));
  }
  const double first = samples.front();
  bool all_equal = true;
  for (double x : samples) {
    if (x < 0.0) {
      throw Error(ErrorKind::DegenerateSamples,
                  "fit input contains a negative sample");
    }
    if (x != first) all_equal = false;
  }
  if (all_equal) {
    throw Error(ErrorKind::DegenerateSamples, "fit input samples are all equal");
  }
}

// Adaptive Simpson with explicit seed intervals around the density peak.
double simpson(const RicianParams& p, double a, double m, double b) {
  return (b - a) / 6.0 *
         (rician_pdf(a, p) + 4.0 * rician_pdf(m, p) + rician_pdf(b, p));
}

double adaptive_segment(const RicianParams& p, double a, double b,
                        double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double left = simpson(p, a, 0.5 * (a + m), m);
  const double right = simpson(p, m, 0.5 * (m + b), b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_segment(p, a, m, left, 0.5 * tol, depth - 1) +
         adaptive_segment(p, m, b, right, 0.5 * tol, depth - 1);
}

double integrate_density(const RicianParams& p, double a, double b,
                         double tol) {
  if (b <= a) return 0.0;
  // Split at the LOS peak so the adaptive pass cannot step over it.
  std::vector<double> knots{a};
  for (double k : {p.los_amplitude - 5.0 * p.sigma, p.los_amplitude,
                   p.los_amplitude + 5.0 * p.sigma}) {
    if (k > a && k < b) knots.push_back(k);
  }
  knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double lo = knots[i], hi = knots[i + 1];
    const double whole = simpson(p, lo, 0.5 * (lo + hi), hi);
    total += adaptive_segment(p, lo, hi, whole,
                              tol / static_cast<double>(knots.size() - 1), 48);
  }
  return total;
}

}  // namespace

void WeibullParams::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::InvalidParameter, "Weibull scale must be > 0");
  }
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw Error(ErrorKind::InvalidParameter, "Weibull shape must be > 0");
  }
}

void RicianParams::validate() const {
  if (!(los_amplitude >= 0.0) || !std::isfinite(los_amplitude)) {
    throw Error(ErrorKind::InvalidParameter,
                "Rician LOS amplitude must be >= 0");
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::InvalidParameter, "Rician sigma must be > 0");
  }
}

double weibull_pdf(double omega, const WeibullParams& params) {
  params.validate();
  if (omega < 0.0) return 0.0;
  const double z = omega / params.scale;
  // pow(0, 0) == 1 keeps the kappa = 1 case exact at omega = 0.
  return params.shape / params.scale * std::pow(z, params.shape - 1.0) *
         std::exp(-std::pow(z, params.shape));
}

double weibull_cdf(double omega, const WeibullParams& params) {
  params.validate();
  if (omega < 0.0) return 0.0;
  return -std::expm1(-std::pow(omega / params.scale, params.shape));
}

double weibull_sample(const WeibullParams& params, Rng& rng) {
  params.validate();
  const double u = rng.uniform01();
  return params.scale * std::pow(-std::log(u), 1.0 / params.shape);
}

WeibullParams weibull_fit_mle(std::span<const double> samples) {
  check_fit_input(samples, kMinFitSamples);
  for (double x : samples) {
    if (x == 0.0) {
      throw Error(ErrorKind::DegenerateSamples,
                  "Weibull MLE undefined for zero-valued samples");
    }
  }

  // Scale invariance of the shape equation: work on x / max(x) so x^k
  // stays in range over the whole bracket.
  const double scale_ref = *std::max_element(samples.begin(), samples.end());
  std::vector<double> x(samples.size());
  std::vector<double> lx(samples.size());
  double mean_log = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    x[i] = samples[i] / scale_ref;
    lx[i] = std::log(x[i]);
    mean_log += lx[i];
  }
  mean_log /= static_cast<double>(samples.size());

  // g(k) = sum x^k ln x / sum x^k - 1/k - mean(ln x); strictly increasing.
  const auto g = [&](double k, double* dg = nullptr) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double xk = std::pow(x[i], k);
      s0 += xk;
      s1 += xk * lx[i];
      s2 += xk * lx[i] * lx[i];
    }
    if (dg != nullptr) {
      *dg = (s2 * s0 - s1 * s1) / (s0 * s0) + 1.0 / (k * k);
    }
    return s1 / s0 - 1.0 / k - mean_log;
  };

  // g is strictly increasing: its first term has the derivative of a
  // weighted variance of ln x and 1/k only shrinks.
  double lo = kMleShapeLo, hi = kMleShapeHi;
  if (g(lo) > 0.0 || g(hi) < 0.0) {
    throw Error(ErrorKind::NoConvergence,
                "Weibull MLE shape not bracketed in [1e-3, 1e3]");
  }
  double k = std::sqrt(lo * hi);
  bool converged = false;
  for (int it = 0; it < kMleIterationCap; ++it) {
    double dg;
    const double residual = g(k, &dg);
    if (std::fabs(residual) < kMleResidualTol) {
      converged = true;
      break;
    }
    if (residual > 0.0) {
      hi = k;
    } else {
      lo = k;
    }
    double next = k - residual / dg;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);  // Newton left the bracket, bisect instead
    }
    k = next;
  }
  if (!converged) {
    throw Error(ErrorKind::NoConvergence,
                "Weibull MLE exceeded the iteration cap");
  }

  double mean_xk = 0.0;
  for (double xi : x) mean_xk += std::pow(xi, k);
  mean_xk /= static_cast<double>(x.size());
  return {scale_ref * std::pow(mean_xk, 1.0 / k), k};
}

namespace detail {

double bessel_i0e(double x) {
  x = std::fabs(x);
  if (x < 50.0) {
    // I0(x) = sum ((x^2/4)^k / (k!)^2); all terms positive, no
    // cancellation, so the series stays accurate up to the crossover.
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 200; ++k) {
      term *= q / (static_cast<double>(k) * static_cast<double>(k));
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return sum * std::exp(-x);
  }
  // Asymptotic: I0(x) e^-x ~ (1 + 1/(8x) + 9/(2!(8x)^2) + ...) / sqrt(2 pi x)
  // Eight terms keep the truncation below 1e-13 for x >= 50.
  const double inv8x = 1.0 / (8.0 * x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 8; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd * inv8x / static_cast<double>(k);
    sum += term;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace detail

double rician_pdf(double r, const RicianParams& params) {
  params.validate();
  if (r < 0.0) return 0.0;
  const double s2 = params.sigma * params.sigma;
  const double diff = r - params.los_amplitude;
  // (r/s2) exp(-(r^2+nu^2)/(2 s2)) I0(r nu / s2), written with the scaled
  // Bessel so large LOS terms cannot overflow.
  return r / s2 * std::exp(-0.5 * diff * diff / s2) *
         detail::bessel_i0e(r * params.los_amplitude / s2);
}

double rician_cdf(double r, const RicianParams& params) {
  params.validate();
  if (r <= 0.0) return 0.0;
  const double value = integrate_density(params, 0.0, r, kRicianCdfTol);
  return std::clamp(value, 0.0, 1.0);
}

double rician_sample(const RicianParams& params, Rng& rng) {
  params.validate();
  const double in_phase = params.los_amplitude + params.sigma * rng.normal();
  const double quadrature = params.sigma * rng.normal();
  return std::sqrt(in_phase * in_phase + quadrature * quadrature);
}

RicianParams rician_fit_moments(std::span<const double> samples) {
  check_fit_input(samples, kMinFitSamples);
  double m2 = 0.0;
  for (double r : samples) m2 += r * r;
  m2 /= static_cast<double>(samples.size());
  double v2 = 0.0;
  for (double r : samples) {
    const double d = r * r - m2;
    v2 += d * d;
  }
  v2 /= static_cast<double>(samples.size());

  const double gamma = v2 / (m2 * m2);
  double k_factor = 0.0;
  if (gamma < 1.0) {
    const double root = std::sqrt(1.0 - gamma);
    k_factor = root / (1.0 - root);
  }
  const double sigma2 = m2 / (2.0 * (k_factor + 1.0));
  return {std::sqrt(2.0 * k_factor * sigma2), std::sqrt(sigma2)};
}

FitReport classify_fading(std::span<const double> samples) {
  if (samples.size() < kMinClassifySamples) {
    throw Error(ErrorKind::InvalidParameter,
                "classification requires at least " +
                    std::to_string(kMinClassifySamples) + " samples, got " +
                    std::to_string(samples.size()));
  }

  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());

  FitReport report;
  report.sample_count = samples.size();

  std::optional<Error> weibull_error;
  try {
    const WeibullParams fit = weibull_fit_mle(sorted);
    std::vector<double> f(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      f[i] = weibull_cdf(sorted[i], fit);
    }
    report.weibull = fit;
    report.ks_weibull = stats::ks_statistic_from_model_values(f);
  } catch (const Error& e) {
    weibull_error = e;
    report.fit_warnings.push_back(std::string("weibull fit failed: ") +
                                  e.what());
  }

  try {
    const RicianParams fit = rician_fit_moments(sorted);
    // Incremental quadrature between consecutive sorted samples: one pass
    // gives the model CDF at every sample.
    std::vector<double> f(sorted.size());
    double acc = integrate_density(fit, 0.0, sorted.front(), kRicianCdfTol);
    f[0] = acc;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      acc += integrate_density(fit, sorted[i - 1], sorted[i],
                               kRicianCdfTol / 10.0);
      f[i] = std::clamp(acc, 0.0, 1.0);
    }
    report.rician = fit;
    report.ks_rician = stats::ks_statistic_from_model_values(f);
  } catch (const Error& e) {
    if (weibull_error.has_value()) throw *weibull_error;
    report.fit_warnings.push_back(std::string("rician fit failed: ") +
                                  e.what());
  }

  if (report.weibull.has_value() && report.rician.has_value()) {
    report.model = report.ks_weibull <= report.ks_rician
                       ? FadingModel::Weibull
                       : FadingModel::Rician;
  } else if (report.weibull.has_value()) {
    report.model = FadingModel::Weibull;
  } else {
    report.model = FadingModel::Rician;
  }
  report.ks_statistic = report.model == FadingModel::Weibull
                            ? report.ks_weibull
                            : report.ks_rician;
  return report;
}

std::string FitReport::to_json() const {
  nlohmann::json doc;
  doc["schema_version"] = "1";
  doc["model"] = model == FadingModel::Weibull ? "weibull" : "rician";
  if (weibull.has_value()) {
    doc["weibull"] = {{"scale", format::snap_sig9(weibull->scale)},
                      {"shape", format::snap_sig9(weibull->shape)}};
  }
  if (rician.has_value()) {
    doc["rician"] = {{"los_amplitude", format::snap_sig9(rician->los_amplitude)},
                     {"sigma", format::snap_sig9(rician->sigma)},
                     {"k_factor", format::snap_sig9(rician->k_factor())}};
  }
  doc["ks_statistic"] = format::snap_sig9(ks_statistic);
  doc["ks_weibull"] = format::snap_sig9(ks_weibull);
  doc["ks_rician"] = format::snap_sig9(ks_rician);
  doc["sample_count"] = sample_count;
  if (!fit_warnings.empty()) doc["fit_warnings"] = fit_warnings;
  return doc.dump(2) + "\n";
}

}  // namespace thzlink::fading
