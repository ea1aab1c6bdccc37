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

#include "snowflake/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "snowflake/linalg.hpp"

namespace snowflake {

Eigen::MatrixXd gram_from_distances(const Eigen::MatrixXd& d) {
  const Eigen::Index n = d.rows();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  const Eigen::VectorXd row_mean = d.rowwise().mean();
  const Eigen::RowVectorXd col_mean = d.colwise().mean();
  const double grand_mean = d.mean();
  Eigen::MatrixXd b = d;
  b.colwise() -= row_mean;
  b.rowwise() -= col_mean;
  b.array() += grand_mean;
  b *= -0.5;
  return 0.5 * (b + b.transpose());
}

double embedding_residual(const Eigen::MatrixXd& coords, const FiniteMetricSpace& x) {
  if (coords.rows() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "coordinate rows do not match the number of points");
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (Eigen::Index j = i + 1; j < x.size(); ++j) {
      const double got = (coords.row(i) - coords.row(j)).norm();
      worst = std::max(worst, std::abs(got - x(i, j)) / x(i, j));
    }
  }
  return worst;
}

EmbeddingResult embed(const FiniteMetricSpace& x, const EmbedOptions& opts) {
  const Eigen::Index n = x.size();
  if (n > opts.max_points) {
    std::ostringstream msg;
    msg << n << " points exceed the configured cap of " << opts.max_points;
    throw Error(ErrorCode::TooLarge, msg.str());
  }
  const auto spectrum = linalg::centered_form_spectrum(squared_distance_matrix(x));

  EmbeddingResult out;
  out.eigenvalues = spectrum.values;
  if (n == 1) {
    out.coordinates = Eigen::MatrixXd::Zero(1, 0);
    return out;
  }
  const double lambda_max = spectrum.values[0];
  const double smallest = spectrum.values[n - 2];
  if (smallest < -opts.tol * lambda_max) {
    std::ostringstream msg;
    msg << "metric is not of negative type: centered eigenvalue " << smallest
        << " < -" << opts.tol << " * " << lambda_max;
    throw EmbeddingError(ErrorCode::NotEmbeddable, msg.str(), spectrum.values, smallest,
                         spectrum.vectors.col(n - 2));
  }

  Eigen::Index rank = 0;
  while (rank < n - 1 && spectrum.values[rank] > opts.tol * lambda_max) ++rank;
  out.rank = rank;
  out.coordinates = spectrum.vectors.leftCols(rank) *
                    spectrum.values.head(rank).cwiseSqrt().asDiagonal();
  out.residual = embedding_residual(out.coordinates, x);
  if (!(out.residual <= kMaxEmbeddingResidual)) {
    std::ostringstream msg;
    msg << "embedding residual " << out.residual << " exceeds " << kMaxEmbeddingResidual;
    throw EmbeddingError(ErrorCode::ResidualExceeded, msg.str(), spectrum.values);
  }
  return out;
}

EmbeddingResult snowflake_embed(const FiniteMetricSpace& x, SnowflakeExponent a,
                                const EmbedOptions& opts) {
  if (!a.is_open_unit()) {
    std::ostringstream msg;
    msg << "snowflake_embed needs 0 < alpha < 1, got " << a.value();
    throw Error(ErrorCode::DomainError, msg.str());
  }
  const NegativeTypeReport base = check_negative_type(x, opts.tol);
  if (!base.is_negative_type) {
    std::ostringstream msg;
    msg << "input metric is not of negative type (min centered eigenvalue "
        << base.min_eigenvalue << ")";
    throw EmbeddingError(ErrorCode::NotEmbeddable, msg.str(), Eigen::VectorXd(),
                         base.min_eigenvalue, *base.witness);
  }
  EmbeddingResult out = embed(snowflake(x, a), opts);
  if (out.rank != x.size() - 1) {
    std::ostringstream msg;
    msg << "snowflake of " << x.size() << " points embedded with rank " << out.rank
        << " < " << x.size() - 1;
    throw EmbeddingError(ErrorCode::TheoremViolation, msg.str(), out.eigenvalues);
  }
  return out;
}

}  // namespace snowflake
