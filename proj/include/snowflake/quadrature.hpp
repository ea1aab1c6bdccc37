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

#include <functional>

#include "snowflake/error.hpp"

namespace snowflake {

struct QuadratureSpec {
  double rel_tol = 1e-11;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;

  /// Throws DomainError unless both tolerances are positive and
  /// max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod on a finite interval. The
/// interval with the largest error estimate is bisected until the total
/// estimate falls below max(abs_tol, rel_tol * |value|); node placement
/// depends only on the integrand and the QuadratureSpec, so repeated runs agree bit for
/// bit. Throws QuadratureNonconvergence when the budget runs out.
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           const QuadratureSpec& spec);

}  // namespace snowflake
