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

#include "snowflake/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace snowflake::linalg {

SymmetricSpectrum descending_eigen(const Eigen::MatrixXd& a) {
  SymmetricSpectrum out;
  const Eigen::Index n = a.rows();
  if (n == 0) {
    out.values.resize(0);
    out.vectors.resize(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  const Eigen::VectorXd& w = solver.eigenvalues();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index l, Eigen::Index r) { return w[l] > w[r]; });
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = w[order[k]];
    out.vectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

Eigen::MatrixXd sum_zero_basis(Eigen::Index n) {
  if (n <= 1) return Eigen::MatrixXd(n, 0);
  // H = I - 2 w w^T with w along q - e_0, q = ones / sqrt(n). H q = e_0, so
  // columns 1..n-1 of H are orthonormal and orthogonal to q.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  w[0] -= 1.0;
  w.normalize();
  Eigen::MatrixXd basis = -2.0 * w * w.tail(n - 1).transpose();
  for (Eigen::Index k = 1; k < n; ++k) basis(k, k - 1) += 1.0;
  return basis;
}

SymmetricSpectrum centered_form_spectrum(const Eigen::MatrixXd& squared_distances) {
  const Eigen::Index n = squared_distances.rows();
  const Eigen::MatrixXd v = sum_zero_basis(n);
  // P V = V, so V^T (-1/2 P D P) V = -1/2 V^T D V.
  Eigen::MatrixXd c = -0.5 * (v.transpose() * squared_distances * v);
  c = 0.5 * (c + c.transpose()).eval();
  SymmetricSpectrum reduced = descending_eigen(c);
  reduced.vectors = v * reduced.vectors;
  return reduced;
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

}  // namespace snowflake::linalg
