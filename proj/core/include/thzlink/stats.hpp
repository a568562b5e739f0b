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

#ifndef THZLINK_STATS_HPP
#define THZLINK_STATS_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "thzlink/geometry.hpp"
#include "thzlink/trajectory.hpp"

namespace thzlink::stats {

struct CdfPoint {
  double value;
  double probability;
};

/// Right-continuous empirical CDF step points: at the i-th sorted sample
/// the probability is i/n; ties collapse to the last rank.
std::vector<CdfPoint> empirical_cdf(std::span<const double> samples);

/// Product-moment correlation. Throws Error{LengthMismatch} on unequal
/// lengths, Error{ZeroVariance} when either series is constant,
/// Error{InvalidParameter} for fewer than 3 pairs.
double pearson_correlation(std::span<const double> x,
                           std::span<const double> y);

/// Kolmogorov-Smirnov statistic of samples against a model CDF:
///   D = max_i max(|i/n - F(x_i)|, |(i-1)/n - F(x_i)|)  over sorted x.
double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& model_cdf);

/// Same statistic when the model CDF has already been evaluated at the
/// sorted samples (F ascending).
double ks_statistic_from_model_values(std::span<const double> sorted_model_cdf);

/// Regularized incomplete beta I_x(a, b) by continued fraction,
/// absolute tolerance 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

/// Two-tailed p-value of a Student-t statistic with `dof` degrees of
/// freedom: I_{dof/(dof+t^2)}(dof/2, 1/2).
double student_t_two_tailed_p(double t, double dof);

struct CorrelationReport {
  std::vector<std::string> variables;
  std::vector<std::vector<double>> r;     // diagonal exactly 1
  std::vector<std::vector<double>> p;     // NaN on diagonal / failed pairs
  std::vector<std::vector<bool>> significant;  // p < 0.01, two-tailed
  std::size_t sample_count = 0;

  std::string to_json() const;
};

/// Pairwise correlation of the five flight-log variables: horizontal
/// movement (cross-track b), vertical movement (along-track a), height,
/// antenna orientation (angular deviation of the instantaneous receiver
/// boresight from the nominal one), and measured power. Offsets are taken
/// from the nominal hover pose. Pairs with a constant series are flagged
/// with NaN instead of aborting the report.
CorrelationReport correlation_matrix(const trajectory::FlightLog& log,
                                     const geometry::StationPose& station,
                                     const geometry::UavPose& nominal);

}  // namespace thzlink::stats

#endif  // THZLINK_STATS_HPP
