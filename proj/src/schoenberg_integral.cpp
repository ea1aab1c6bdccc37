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

#include "snowflake/schoenberg_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace snowflake {
namespace {

void require_open_unit(double a, const char* what) {
  if (!(a > 0.0 && a < 1.0)) {
    std::ostringstream msg;
    msg << what << " needs 0 < a < 1, got " << a;
    throw Error(ErrorCode::DomainError, msg.str());
  }
}

// h(lambda) = sum_k w_k (1 - exp(-lambda^2 t_k^2)).
struct GaussianSum {
  std::vector<double> weights;
  std::vector<double> scales;  // t_k > 0

  double at(double lambda) const {
    double h = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const double x = lambda * scales[k];
      h -= weights[k] * std::expm1(-x * x);
    }
    return h;
  }

  // h(lambda) / lambda^2, finite at 0.
  double over_square(double lambda) const {
    const double l2 = lambda * lambda;
    double h = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      const double t2 = scales[k] * scales[k];
      const double x = l2 * t2;
      h += weights[k] * (x == 0.0 ? t2 : -std::expm1(-x) / l2);
    }
    return h;
  }
};

// int_0^inf h(lambda) lambda^{-1-2a} dlambda, split as
//   [0, l0]      with v = lambda^{2-2a}, integrand h / ((2-2a) lambda^2),
//                bounded at v = 0;
//   [l0, lcut]   in s = log(lambda), integrand h(e^s) e^{-2a s};
//   [lcut, inf)  where every exp term is below machine epsilon, so
//                h = sum(w) and the power integrates in closed form.
// l0 = 1 / max(t_max, 1) and lcut = sqrt(-log eps) / t_min.
double gaussian_power_integral(const GaussianSum& h, double a, const QuadratureSpec& q) {
  if (h.weights.empty()) return 0.0;
  const auto [t_min, t_max] = std::minmax_element(h.scales.begin(), h.scales.end());
  const double l0 = 1.0 / std::max(*t_max, 1.0);
  const double lcut =
      std::max(l0, std::sqrt(-std::log(std::numeric_limits<double>::epsilon())) / *t_min);
  const double p = 2.0 - 2.0 * a;

  const auto near = integrate(
      [&](double v) {
        const double lambda = std::pow(v, 1.0 / p);
        return h.over_square(lambda) / p;
      },
      0.0, std::pow(l0, p), q);
  const auto middle = integrate(
      [&](double s) {
        const double lambda = std::exp(s);
        return h.at(lambda) * std::exp(-2.0 * a * s);
      },
      std::log(l0), std::log(lcut), q);
  double total_weight = 0.0;
  for (double w : h.weights) total_weight += w;
  const double tail = total_weight * std::pow(lcut, -2.0 * a) / (2.0 * a);
  return near.value + middle.value + tail;
}

}  // namespace

double schoenberg_constant(double a) {
  require_open_unit(a, "schoenberg_constant");
  return 2.0 * a / std::tgamma(1.0 - a);
}

ConstantCheck schoenberg_constant_check(double a, const QuadratureSpec& q) {
  const double closed = schoenberg_constant(a);
  const double integral = gaussian_power_integral({{1.0}, {1.0}}, a, q);
  const double quad = 1.0 / integral;
  return {closed, quad, std::abs(closed - quad) / closed};
}

PowerIdentity verify_power_identity(double t, double a, const QuadratureSpec& q) {
  require_open_unit(a, "verify_power_identity");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::DomainError, "verify_power_identity needs t > 0");
  }
  const double lhs = std::pow(t, 2.0 * a);
  const double rhs = schoenberg_constant(a) * gaussian_power_integral({{1.0}, {t}}, a, q);
  return {lhs, rhs, std::abs(lhs - rhs) / lhs};
}

Eigen::MatrixXd gaussian_kernel_matrix(const PointCloud& p, double lambda) {
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::DomainError, "Gaussian kernel needs lambda > 0");
  }
  const Eigen::Index n = p.size();
  Eigen::MatrixXd s = Eigen::MatrixXd::Identity(n, n);
  const double l2 = lambda * lambda;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      s(i, j) = s(j, i) = std::exp(-l2 * (p.point(i) - p.point(j)).squaredNorm());
    }
  }
  return s;
}

KernelPsd check_kernel_psd(const Eigen::MatrixXd& s, double tol) {
  if (s.rows() != s.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "kernel matrix must be square");
  }
  if (s.rows() == 0) return {true, std::numeric_limits<double>::infinity()};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()[0];
  return {min_eig >= -tol, min_eig};
}

DecompositionValues strict_decomposition_check(const PointCloud& p, double a,
                                               const WeightVector& lam,
                                               const QuadratureSpec& q) {
  require_open_unit(a, "strict_decomposition_check");
  if (lam.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one weight per point is required");
  }
  if (std::abs(lam.sum()) > 1e-12 * std::max(1.0, lam.cwiseAbs().sum())) {
    std::ostringstream msg;
    msg << "weights sum to " << lam.sum() << ", expected 0";
    throw Error(ErrorCode::BadWeights, msg.str());
  }
  const FiniteMetricSpace x = euclidean_metric(p);
  const Eigen::MatrixXd d_a = squared_distance_matrix(snowflake(x, SnowflakeExponent(a)));
  const double form = quadratic_form(d_a, lam);

  GaussianSum h;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    for (Eigen::Index j = i + 1; j < p.size(); ++j) {
      const double w = 2.0 * lam[i] * lam[j];
      if (w == 0.0) continue;
      h.weights.push_back(w);
      h.scales.push_back(x(i, j));
    }
  }
  return {form, schoenberg_constant(a) * gaussian_power_integral(h, a, q)};
}

}  // namespace snowflake
