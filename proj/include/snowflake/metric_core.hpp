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

#include <Eigen/Dense>

#include "snowflake/error.hpp"

namespace snowflake {

/// Error raised while validating a distance matrix or point cloud. Unused
/// indices are -1.
class MetricError : public Error {
 public:
  MetricError(ErrorCode code, const std::string& what, Eigen::Index i = -1,
              Eigen::Index j = -1, Eigen::Index k = -1)
      : Error(code, what), i_(i), j_(j), k_(k) {}

  Eigen::Index i() const { return i_; }
  Eigen::Index j() const { return j_; }
  Eigen::Index k() const { return k_; }

 private:
  Eigen::Index i_, j_, k_;
};

/// Snowflake exponent in the closed interval [0, 1].
class SnowflakeExponent {
 public:
  explicit SnowflakeExponent(double alpha);

  double value() const { return alpha_; }
  /// True for 0 < alpha < 1, the range where the snowflake is strictly
  /// of negative type.
  bool is_open_unit() const { return alpha_ > 0.0 && alpha_ < 1.0; }

 private:
  double alpha_;
};

class PointCloud;

/// An n-point metric space stored as a dense symmetric distance matrix.
/// Instances are immutable and can only be obtained through the validating
/// constructors below.
class FiniteMetricSpace {
 public:
  Eigen::Index size() const { return d_.rows(); }
  const Eigen::MatrixXd& distances() const { return d_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return d_(i, j); }
  double max_distance() const;

 private:
  explicit FiniteMetricSpace(Eigen::MatrixXd d) : d_(std::move(d)) {}

  friend FiniteMetricSpace validate_metric(const Eigen::MatrixXd&, double);
  friend FiniteMetricSpace snowflake(const FiniteMetricSpace&,
                                     SnowflakeExponent);
  friend FiniteMetricSpace euclidean_metric(const PointCloud&);

  Eigen::MatrixXd d_;
};

/// n points in E^m, one per row.
class PointCloud {
 public:
  explicit PointCloud(Eigen::MatrixXd coordinates);

  Eigen::Index size() const { return x_.rows(); }
  Eigen::Index dim() const { return x_.cols(); }
  const Eigen::MatrixXd& coordinates() const { return x_; }
  auto point(Eigen::Index i) const { return x_.row(i); }

 private:
  Eigen::MatrixXd x_;
};

/// Checks the metric axioms. Symmetry and the zero diagonal must hold
/// exactly; the triangle inequality is allowed a slack of tol * max d.
FiniteMetricSpace validate_metric(const Eigen::MatrixXd& matrix, double tol);

/// d(x,y)^alpha. alpha = 0 gives the uniform metric (all off-diagonal
/// distances 1).
FiniteMetricSpace snowflake(const FiniteMetricSpace& x, SnowflakeExponent a);

/// Pairwise Euclidean distances between the rows of p. Throws
/// DuplicatePoints if two rows coincide.
FiniteMetricSpace euclidean_metric(const PointCloud& p);

/// D(i,j) = d(i,j)^2.
Eigen::MatrixXd squared_distance_matrix(const FiniteMetricSpace& x);

}  // namespace snowflake
