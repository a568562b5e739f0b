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

#ifndef THZLINK_FADING_HPP
#define THZLINK_FADING_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thzlink/rng.hpp"

namespace thzlink::fading {

/// Weibull small-scale fading of the link, expressed in dB. Shape 1
/// degenerates to exponential, 2 to Rayleigh; larger shapes mean milder
/// fading. The measured hovering channel fits scale 5.01, shape 57.40.
struct WeibullParams {
  double scale = 5.01;   // phi, dB
  double shape = 57.40;  // kappa

  void validate() const;
};

/// Rician envelope of the stationary (propellers-off) channel.
struct RicianParams {
  double los_amplitude = 0.0;  // nu, linear envelope units
  double sigma = 1.0;          // scatter component std

  double k_factor() const {
    return los_amplitude * los_amplitude / (2.0 * sigma * sigma);
  }
  void validate() const;
};

enum class FadingModel { Weibull, Rician };

struct FitReport {
  FadingModel model = FadingModel::Weibull;
  std::optional<WeibullParams> weibull;
  std::optional<RicianParams> rician;
  double ks_statistic = std::numeric_limits<double>::quiet_NaN();
  double ks_weibull = std::numeric_limits<double>::quiet_NaN();
  double ks_rician = std::numeric_limits<double>::quiet_NaN();
  std::size_t sample_count = 0;
  std::vector<std::string> fit_warnings;  // e.g. one model failed to fit

  std::string to_json() const;
};

inline constexpr std::size_t kMinFitSamples = 8;
inline constexpr std::size_t kMinClassifySamples = 30;

// Weibull density (kappa/phi)(w/phi)^(kappa-1) exp(-(w/phi)^kappa) for
// w >= 0, zero below.
double weibull_pdf(double omega, const WeibullParams& params);
double weibull_cdf(double omega, const WeibullParams& params);

/// Inverse-CDF draw phi * (-ln U)^(1/kappa).
double weibull_sample(const WeibullParams& params, Rng& rng);

/// Maximum-likelihood fit. The shape solves
///   sum x^k ln x / sum x^k - 1/k = mean(ln x)
/// by bisection with Newton acceleration inside the bracket
/// [1e-3, 1e3]; residual below 1e-10. Samples are normalized by their
/// maximum first, which keeps x^k in range for any bracket shape.
WeibullParams weibull_fit_mle(std::span<const double> samples);

// Rician density (r/sigma^2) exp(-(r^2+nu^2)/(2 sigma^2)) I0(r nu/sigma^2)
// for r >= 0, zero below.
double rician_pdf(double r, const RicianParams& params);

/// CDF by adaptive quadrature of the density, absolute tolerance 1e-8.
double rician_cdf(double r, const RicianParams& params);

/// sqrt((nu + sigma z1)^2 + (sigma z2)^2) with independent standard
/// normals.
double rician_sample(const RicianParams& params, Rng& rng);

/// Method-of-moments fit via gamma = Var(r^2)/E[r^2]^2 and
/// K = sqrt(1-gamma)/(1-sqrt(1-gamma)) (K = 0 when gamma >= 1).
RicianParams rician_fit_moments(std::span<const double> samples);

/// Fits both families and tags the one with the smaller KS statistic.
/// Requires at least 30 samples. If one fit fails the other is returned
/// with a warning; if both fail the first error propagates.
FitReport classify_fading(std::span<const double> samples);

namespace detail {
/// Exponentially scaled modified Bessel I0(x) e^-x, power series below
/// x = 20 and asymptotic expansion above.
double bessel_i0e(double x);
}  // namespace detail

}  // namespace thzlink::fading

#endif  // THZLINK_FADING_HPP
