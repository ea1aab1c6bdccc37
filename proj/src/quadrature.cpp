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

#include "snowflake/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <algorithm>
#include <sstream>
#include <vector>

namespace snowflake {
namespace {

// Kronrod abscissae on [0, 1); odd indices are the Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi, value, error;
  double abs_value;  // Kronrod estimate of the integral of |f|
  bool operator<(const Panel& other) const {
    if (error != other.error) return error < other.error;
    return lo > other.lo;  // deterministic tiebreak
  }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double kronrod_abs = std::abs(fc) * kKronrodWeights[7];
  for (int k = 0; k < 7; ++k) {
    const double dx = half * kNodes[k];
    const double left = f(center - dx);
    const double right = f(center + dx);
    kronrod += kKronrodWeights[k] * (left + right);
    kronrod_abs += kKronrodWeights[k] * (std::abs(left) + std::abs(right));
    if (k % 2 == 1) gauss += kGaussWeights[k / 2] * (left + right);
  }
  const double width = std::abs(half);
  return {lo, hi, kronrod * half, std::abs(kronrod - gauss) * width, kronrod_abs * width};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
    throw Error(ErrorCode::DomainError,
                "quadrature tolerances must be positive and max_subdivisions >= 1");
  }
}

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec) {
  spec.validate();
  QuadratureResult out;
  if (lo == hi) return out;

  std::vector<Panel> panels{gauss_kronrod(f, lo, hi)};
  double value = panels.front().value;
  double error = panels.front().error;
  double abs_value = panels.front().abs_value;
  // Below this the estimate is dominated by rounding in the integrand.
  constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
  int subdivisions = 0;
  while (error > std::max({spec.abs_tol, spec.rel_tol * std::abs(value),
                           kRoundoff * abs_value})) {
    if (subdivisions >= spec.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature on [" << lo << ", " << hi << "] did not converge after "
          << subdivisions << " subdivisions (estimate " << value << " +- " << error << ")";
      throw Error(ErrorCode::QuadratureNonconvergence, msg.str());
    }
    std::pop_heap(panels.begin(), panels.end());
    const Panel worst = panels.back();
    panels.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    for (const Panel& piece :
         {gauss_kronrod(f, worst.lo, mid), gauss_kronrod(f, mid, worst.hi)}) {
      panels.push_back(piece);
      std::push_heap(panels.begin(), panels.end());
    }
    ++subdivisions;
    // Re-summed each step; incremental add/subtract drifts.
    value = 0.0;
    error = 0.0;
    abs_value = 0.0;
    for (const Panel& p : panels) {
      value += p.value;
      error += p.error;
      abs_value += p.abs_value;
    }
  }
  out.value = value;
  out.error_estimate = error;
  out.subdivisions = subdivisions;
  return out;
}

}  // namespace snowflake
