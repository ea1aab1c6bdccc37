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
#include "snowflake/quadrature.hpp"

// Numerical checks of the integral representation
//
//   t^{2a} = c(a) * int_0^inf (1 - exp(-lambda^2 t^2)) lambda^{-1-2a} dlambda,
//
// for 0 < a < 1, and of the positivity of Gaussian kernels that together
// make snowflaked Euclidean metrics strictly of negative type. The parameter
// a is the snowflake exponent throughout.

namespace snowflake {

/// c(a) = 2a / Gamma(1 - a). Throws DomainError unless 0 < a < 1.
double schoenberg_constant(double a);

struct ConstantCheck {
  double closed_form;
  double quadrature;  // 1 / int_0^inf (1 - e^{-lambda^2}) lambda^{-1-2a}
  double rel_err;
};

/// Cross-checks the closed form of c(a) against quadrature.
ConstantCheck schoenberg_constant_check(double a, const QuadratureSpec& q = {});

struct PowerIdentity {
  double lhs;  // t^{2a}
  double rhs;  // c(a) * integral
  double rel_err;
};

PowerIdentity verify_power_identity(double t, double a, const QuadratureSpec& q = {});

/// S(i,j) = exp(-lambda^2 |p_i - p_j|^2).
Eigen::MatrixXd gaussian_kernel_matrix(const PointCloud& p, double lambda);

struct KernelPsd {
  bool is_psd;
  double min_eigenvalue;
};

/// Full-spectrum PSD test: is_psd iff the smallest eigenvalue is >= -tol.
KernelPsd check_kernel_psd(const Eigen::MatrixXd& s, double tol = 1e-10);

struct DecompositionValues {
  double form_value;      // Lambda D^a Lambda^T, D^a(i,j) = |p_i - p_j|^{2a}
  double integral_value;  // c(a) int_0^inf Lambda(-S(lambda))Lambda^T lambda^{-1-2a}
};

/// Evaluates Lambda D^a Lambda^T directly and through the Gaussian kernel
/// integral. With sum(Lambda) = 0 the constant terms drop out, so the
/// integrand is sum_{i<j} 2 lam_i lam_j (1 - exp(-lambda^2 d_ij^2)).
/// Throws BadWeights if sum(Lambda) != 0 (relative 1e-12).
DecompositionValues strict_decomposition_check(const PointCloud& p, double a,
                                               const WeightVector& lam,
                                               const QuadratureSpec& q = {});

}  // namespace snowflake
