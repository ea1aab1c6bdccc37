// Copyright 2026 The snowflake-embed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>

#include <Eigen/Dense>

#include "snowflake/metric_core.hpp"

namespace snowflake {

/// Weights Lambda of a negative-type inequality. Operations that need
/// sum(Lambda) = 0 check it themselves.
using WeightVector = Eigen::VectorXd;

inline constexpr double kDefaultSpectralTol = 1e-9;

/// Outcome of a negative-type test. The form Lambda D Lambda^T is decided
/// through the spectrum of -1/2 P D P on the sum-zero subspace, where
/// Lambda (-1/2 P D P) Lambda^T = -1/2 Lambda D Lambda^T.
struct NegativeTypeReport {
  bool is_negative_type = true;
  bool is_strict = true;
  /// Smallest eigenvalue of -1/2 P D P on the sum-zero subspace (the trivial
  /// zero along the ones vector is excluded). +inf for a single point.
  double min_eigenvalue = 0.0;
  /// Largest absolute eigenvalue on the same subspace; tolerances scale by it.
  double spectral_radius = 0.0;
  /// Unit-norm, sum-zero eigenvector of min_eigenvalue. Present when the
  /// form is violated or degenerate.
  std::optional<WeightVector> witness;

  /// Negative type is equivalent to isometric embeddability in Hilbert space.
  bool embeddable() const { return is_negative_type; }
};

class NotStrictError : public Error {
 public:
  NotStrictError(const std::string& what, NegativeTypeReport report)
      : Error(ErrorCode::NotStrict, what), report_(std::move(report)) {}
  const NegativeTypeReport& report() const { return report_; }

 private:
  NegativeTypeReport report_;
};

/// sum_{i,j} lam_i lam_j D(i,j).
double quadratic_form(const Eigen::MatrixXd& d, const WeightVector& lam);

/// Spectral negative-type test of X with squared-distance matrix D.
NegativeTypeReport check_negative_type(const FiniteMetricSpace& x,
                                       double tol = kDefaultSpectralTol);

/// Runs check_negative_type on snowflake(X, a) and requires strictness,
/// min_eigenvalue > tol * spectral_radius. X must itself be of negative type.
/// alpha must lie in (0, 1]; alpha = 1 is admitted so that degenerate
/// Euclidean inputs can be contrasted with their snowflakes.
/// Throws NotStrictError carrying the report when strictness fails.
NegativeTypeReport check_strict_negative_type(const FiniteMetricSpace& x,
                                              SnowflakeExponent a,
                                              double tol = kDefaultSpectralTol);

struct GeometricFormValues {
  double lhs;  // Lambda D Lambda^T
  double rhs;  // -2 |x_+ - x_-|^2
};

/// Evaluates both sides of Lambda D Lambda^T = -2 |x_+ - x_-|^2 where
/// x_+ = sum_{lam_i > 0} lam_i p_i and x_- = sum_{lam_i < 0} |lam_i| p_i.
/// Both are convex combinations: x_- uses |lam_i|, which is the reading
/// under which the identity balances. The positive weights must sum to +1
/// and the negative ones to -1 (within 1e-12), else BadPartition.
GeometricFormValues geometric_form_check(const PointCloud& p, const WeightVector& lam);

/// Affine independence of the rows of p. is_strict reports general
/// position: the smallest centered eigenvalue exceeds tol times the largest.
/// Otherwise witness is an affine dependence (sum-zero Lambda with
/// Lambda D Lambda^T ~ 0).
NegativeTypeReport general_position_certificate(const PointCloud& p,
                                                double tol = kDefaultSpectralTol);

}  // namespace snowflake
