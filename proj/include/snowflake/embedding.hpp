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

#include "snowflake/metric_core.hpp"
#include "snowflake/negative_type.hpp"

namespace snowflake {

inline constexpr double kMaxEmbeddingResidual = 1e-8;

struct EmbedOptions {
  /// Eigenvalues above tol * lambda_max are kept; below -tol * lambda_max
  /// the metric is rejected.
  double tol = kDefaultSpectralTol;
  Eigen::Index max_points = 4096;
};

/// Classical (double-centering) embedding of a finite metric.
struct EmbeddingResult {
  /// n x rank, rows are the embedded points, centered at the centroid.
  Eigen::MatrixXd coordinates;
  /// The n-1 eigenvalues of -1/2 P D P on the sum-zero subspace, descending.
  Eigen::VectorXd eigenvalues;
  Eigen::Index rank = 0;
  /// max_{i<j} | |p_i - p_j| - d(i,j) | / d(i,j)
  double residual = 0.0;

  /// Smallest kept eigenvalue, 0 when nothing was kept.
  double min_kept_eigenvalue() const {
    return rank == 0 ? 0.0 : eigenvalues[rank - 1];
  }
};

class EmbeddingError : public Error {
 public:
  EmbeddingError(ErrorCode code, const std::string& what, Eigen::VectorXd eigenvalues,
                 double offending_eigenvalue = 0.0, WeightVector witness = {})
      : Error(code, what),
        eigenvalues_(std::move(eigenvalues)),
        offending_eigenvalue_(offending_eigenvalue),
        witness_(std::move(witness)) {}

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  double offending_eigenvalue() const { return offending_eigenvalue_; }
  /// Sum-zero eigenvector violating negative type (NotEmbeddable only).
  const WeightVector& witness() const { return witness_; }

 private:
  Eigen::VectorXd eigenvalues_;
  double offending_eigenvalue_;
  WeightVector witness_;
};

/// B = -1/2 P D P with P = I - ones/n.
Eigen::MatrixXd gram_from_distances(const Eigen::MatrixXd& d);

/// Isometric embedding of X into E^rank. Throws NotEmbeddable if X is not of
/// negative type and ResidualExceeded if the reconstructed distances miss by
/// more than kMaxEmbeddingResidual.
EmbeddingResult embed(const FiniteMetricSpace& x, const EmbedOptions& opts = {});

/// Embeds X^alpha for 0 < alpha < 1 and certifies that the image spans
/// n-1 dimensions, i.e. rank == n-1. A rank deficit throws TheoremViolation;
/// at sane tolerances that means numerical breakdown.
EmbeddingResult snowflake_embed(const FiniteMetricSpace& x, SnowflakeExponent a,
                                const EmbedOptions& opts = {});

double embedding_residual(const Eigen::MatrixXd& coords, const FiniteMetricSpace& x);

}  // namespace snowflake
