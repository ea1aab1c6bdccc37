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

namespace snowflake::linalg {

/// Eigenpairs of a symmetric matrix sorted by descending eigenvalue, ties
/// broken by the solver's index order.
struct SymmetricSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // column k pairs with values[k]
};

SymmetricSpectrum descending_eigen(const Eigen::MatrixXd& a);

/// n x (n-1) matrix whose orthonormal columns span {v : sum(v) = 0}.
/// Built from the Householder reflection taking ones/sqrt(n) to e_0.
Eigen::MatrixXd sum_zero_basis(Eigen::Index n);

/// Spectrum of the centered Gram form -1/2 P D P restricted to the sum-zero
/// subspace: n-1 eigenvalues (descending) and their eigenvectors mapped back
/// to R^n, so every column sums to zero.
SymmetricSpectrum centered_form_spectrum(const Eigen::MatrixXd& squared_distances);

/// Largest absolute entry of a - b.
double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace snowflake::linalg
