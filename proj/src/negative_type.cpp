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

#include "snowflake/negative_type.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "snowflake/linalg.hpp"

namespace snowflake {
namespace {

constexpr double kPartitionTol = 1e-12;

NegativeTypeReport report_from_spectrum(const linalg::SymmetricSpectrum& s,
                                        double tol) {
  NegativeTypeReport r;
  const Eigen::Index k = s.values.size();
  if (k == 0) {
    r.min_eigenvalue = std::numeric_limits<double>::infinity();
    return r;
  }
  r.min_eigenvalue = s.values[k - 1];
  r.spectral_radius = s.values.cwiseAbs().maxCoeff();
  const double cutoff = tol * r.spectral_radius;
  r.is_negative_type = r.min_eigenvalue >= -cutoff;
  r.is_strict = r.min_eigenvalue > cutoff;
  if (!r.is_strict) r.witness = s.vectors.col(k - 1);
  return r;
}

}  // namespace

double quadratic_form(const Eigen::MatrixXd& d, const WeightVector& lam) {
  if (d.rows() != d.cols() || d.rows() != lam.size()) {
    std::ostringstream msg;
    msg << "quadratic form of a " << d.rows() << "x" << d.cols()
        << " matrix with " << lam.size() << " weights";
    throw Error(ErrorCode::DimensionMismatch, msg.str());
  }
  return lam.dot(d * lam);
}

NegativeTypeReport check_negative_type(const FiniteMetricSpace& x, double tol) {
  return report_from_spectrum(
      linalg::centered_form_spectrum(squared_distance_matrix(x)), tol);
}

NegativeTypeReport check_strict_negative_type(const FiniteMetricSpace& x,
                                              SnowflakeExponent a, double tol) {
  if (!(a.value() > 0.0)) {
    throw Error(ErrorCode::DomainError,
                "strict negative type needs a snowflake exponent in (0, 1]");
  }
  const NegativeTypeReport base = check_negative_type(x, tol);
  if (!base.is_negative_type) {
    std::ostringstream msg;
    msg << "input metric is not of negative type (min eigenvalue "
        << base.min_eigenvalue << ")";
    throw Error(ErrorCode::NotEmbeddable, msg.str());
  }
  NegativeTypeReport r = check_negative_type(snowflake(x, a), tol);
  if (!r.is_strict) {
    std::ostringstream msg;
    msg << "snowflake with alpha = " << a.value()
        << " is not strictly of negative type: min eigenvalue " << r.min_eigenvalue
        << " <= " << tol * r.spectral_radius;
    throw NotStrictError(msg.str(), std::move(r));
  }
  return r;
}

GeometricFormValues geometric_form_check(const PointCloud& p, const WeightVector& lam) {
  if (lam.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one weight per point is required");
  }
  double pos = 0.0, neg = 0.0;
  Eigen::VectorXd x_plus = Eigen::VectorXd::Zero(p.dim());
  Eigen::VectorXd x_minus = Eigen::VectorXd::Zero(p.dim());
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    if (lam[i] > 0.0) {
      pos += lam[i];
      x_plus += lam[i] * p.point(i).transpose();
    } else if (lam[i] < 0.0) {
      neg += lam[i];
      x_minus -= lam[i] * p.point(i).transpose();
    }
  }
  if (std::abs(pos - 1.0) > kPartitionTol || std::abs(neg + 1.0) > kPartitionTol) {
    std::ostringstream msg;
    msg << "positive weights sum to " << pos << " and negative weights to " << neg
        << "; expected +1 and -1";
    throw Error(ErrorCode::BadPartition, msg.str());
  }
  const Eigen::MatrixXd d = squared_distance_matrix(euclidean_metric(p));
  return {quadratic_form(d, lam), -2.0 * (x_plus - x_minus).squaredNorm()};
}

NegativeTypeReport general_position_certificate(const PointCloud& p, double tol) {
  const Eigen::MatrixXd d = squared_distance_matrix(euclidean_metric(p));
  const auto s = linalg::centered_form_spectrum(d);
  NegativeTypeReport r = report_from_spectrum(s, tol);
  // Euclidean input: the centered form is a Gram matrix, so the largest
  // eigenvalue is the natural scale.
  if (s.values.size() > 0) {
    r.is_negative_type = true;
    r.is_strict = s.values[s.values.size() - 1] > tol * s.values[0];
    if (r.is_strict) {
      r.witness.reset();
    } else {
      r.witness = s.vectors.col(s.values.size() - 1);
    }
  }
  return r;
}

}  // namespace snowflake
