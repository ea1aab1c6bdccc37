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

#include "snowflake/metric_core.hpp"

#include <cmath>
#include <sstream>

namespace snowflake {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::DuplicatePoints: return "DuplicatePoints";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotStrict: return "NotStrict";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::NotEmbeddable: return "NotEmbeddable";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::ResidualExceeded: return "ResidualExceeded";
    case ErrorCode::QuadratureNonconvergence: return "QuadratureNonconvergence";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::OrderExceeded: return "OrderExceeded";
    case ErrorCode::NumericalAmbiguity: return "NumericalAmbiguity";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::NonFreeOrbit: return "NonFreeOrbit";
    case ErrorCode::OrbitCollision: return "OrbitCollision";
    case ErrorCode::InvarianceViolation: return "InvarianceViolation";
    case ErrorCode::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

SnowflakeExponent::SnowflakeExponent(double alpha) : alpha_(alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    std::ostringstream msg;
    msg << "snowflake exponent " << alpha << " outside [0, 1]";
    throw Error(ErrorCode::DomainError, msg.str());
  }
}

double FiniteMetricSpace::max_distance() const {
  return d_.size() == 0 ? 0.0 : d_.maxCoeff();
}

PointCloud::PointCloud(Eigen::MatrixXd coordinates) : x_(std::move(coordinates)) {
  if (x_.rows() == 0) {
    throw MetricError(ErrorCode::DimensionMismatch, "point cloud is empty");
  }
  if (!x_.allFinite()) {
    throw MetricError(ErrorCode::NonFiniteValue,
                      "point cloud has non-finite coordinates");
  }
}

FiniteMetricSpace validate_metric(const Eigen::MatrixXd& matrix, double tol) {
  const Eigen::Index n = matrix.rows();
  if (n == 0 || matrix.cols() != n) {
    throw MetricError(ErrorCode::NotSquare, "distance matrix must be square and non-empty");
  }
  if (!matrix.allFinite()) {
    throw MetricError(ErrorCode::NonFiniteValue, "distance matrix has non-finite entries");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (matrix(i, i) != 0.0) {
      std::ostringstream msg;
      msg << "d(" << i << "," << i << ") = " << matrix(i, i) << " is not zero";
      throw MetricError(ErrorCode::NonzeroDiagonal, msg.str(), i, i);
    }
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (matrix(i, j) != matrix(j, i)) {
        std::ostringstream msg;
        msg << "d(" << i << "," << j << ") = " << matrix(i, j) << " but d(" << j
            << "," << i << ") = " << matrix(j, i);
        throw MetricError(ErrorCode::NotSymmetric, msg.str(), i, j);
      }
      if (!(matrix(i, j) > 0.0)) {
        std::ostringstream msg;
        msg << "d(" << i << "," << j << ") = " << matrix(i, j) << " is not positive";
        throw MetricError(ErrorCode::NonpositiveOffDiagonal, msg.str(), i, j);
      }
    }
  }
  const double slack = tol * matrix.maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      for (Eigen::Index k = 0; k < n; ++k) {
        if (matrix(i, j) > matrix(i, k) + matrix(k, j) + slack) {
          std::ostringstream msg;
          msg << "d(" << i << "," << j << ") = " << matrix(i, j) << " > d(" << i << ","
              << k << ") + d(" << k << "," << j << ") = " << matrix(i, k) + matrix(k, j);
          throw MetricError(ErrorCode::TriangleViolation, msg.str(), i, j, k);
        }
      }
    }
  }
  return FiniteMetricSpace(matrix);
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& x, SnowflakeExponent a) {
  const Eigen::Index n = x.size();
  const double alpha = a.value();
  if (alpha == 1.0) return x;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = alpha == 0.0 ? 1.0 : std::pow(x(i, j), alpha);
    }
  }
  // t -> t^alpha is subadditive, so the axioms carry over without rechecking.
  return FiniteMetricSpace(std::move(d));
}

FiniteMetricSpace euclidean_metric(const PointCloud& p) {
  const Eigen::Index n = p.size();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double dist = (p.point(i) - p.point(j)).norm();
      if (dist == 0.0) {
        std::ostringstream msg;
        msg << "points " << i << " and " << j << " coincide";
        throw MetricError(ErrorCode::DuplicatePoints, msg.str(), i, j);
      }
      d(i, j) = d(j, i) = dist;
    }
  }
  return FiniteMetricSpace(std::move(d));
}

Eigen::MatrixXd squared_distance_matrix(const FiniteMetricSpace& x) {
  return x.distances().array().square().matrix();
}

}  // namespace snowflake
