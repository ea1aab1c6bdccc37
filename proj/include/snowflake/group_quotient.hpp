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

#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "snowflake/metric_core.hpp"

// Finite groups acting orthogonally on E^m, the quotient metric E^m/G, and
// the embedding of the snowflake of n orbits into
//
//   Q(n,G) = L_1(n,G) / G,  L_1(n,G) = {f in R[G]^n : sum of all coordinates = 1},
//
// where G acts on R[G]^n by the left regular action on each factor.
//
// Only linear actions are modelled. A finite group of affine isometries
// fixes the barycenter of any orbit, so translating that point to the origin
// reduces the affine case to this one.

namespace snowflake {

/// Abstract finite group given by its multiplication table:
/// multiply(g, h) = table[g][h].
class FiniteGroup {
 public:
  /// Validates the table (Latin square, identity, inverses, associativity
  /// exhaustively up to order 64 and on a fixed sample above) and throws
  /// InvalidGroup on failure.
  static FiniteGroup from_table(std::vector<std::vector<int>> table);

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  int multiply(int g, int h) const {
    return table_[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)];
  }
  const std::vector<std::vector<int>>& table() const { return table_; }

 private:
  FiniteGroup() = default;

  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
};

/// A finite group together with orthogonal matrices realizing it on E^m, so
/// that matrix(multiply(g, h)) = matrix(g) * matrix(h).
class OrthogonalAction {
 public:
  /// Builds the action from the full list of group matrices. The product of
  /// any two must be in the list (within tol) or NotClosed is thrown.
  static OrthogonalAction from_matrices(std::vector<Eigen::MatrixXd> matrices,
                                        double tol = 1e-8);

  const FiniteGroup& group() const { return group_; }
  int order() const { return group_.order(); }
  Eigen::Index dim() const { return dim_; }
  const Eigen::MatrixXd& matrix(int g) const {
    return matrices_[static_cast<std::size_t>(g)];
  }
  const std::vector<Eigen::MatrixXd>& matrices() const { return matrices_; }

 private:
  OrthogonalAction(FiniteGroup group, std::vector<Eigen::MatrixXd> matrices, double tol);
  friend OrthogonalAction close_group(const std::vector<Eigen::MatrixXd>&, double, int);

  FiniteGroup group_;
  Eigen::Index dim_ = 0;
  std::vector<Eigen::MatrixXd> matrices_;
};

/// Error from lift_orbits. orbit/other_orbit index representatives,
/// element/other_element index group elements; unused fields are -1.
class OrbitError : public Error {
 public:
  OrbitError(ErrorCode code, const std::string& what, int orbit, int element,
             int other_orbit, int other_element)
      : Error(code, what),
        orbit_(orbit),
        element_(element),
        other_orbit_(other_orbit),
        other_element_(other_element) {}

  int orbit() const { return orbit_; }
  int element() const { return element_; }
  int other_orbit() const { return other_orbit_; }
  int other_element() const { return other_element_; }

 private:
  int orbit_, element_, other_orbit_, other_element_;
};

/// Orbit lift Y of n representatives. Lifted point (k, h) = h . rep_k is
/// stored at row k * |G| + h.
struct QuotientConfiguration {
  Eigen::MatrixXd representatives;  // n x m
  Eigen::MatrixXd lifted;           // n|G| x m
  /// permutations[g][i] is the index that g sends lifted index i to:
  /// (k, h) -> (k, g h).
  std::vector<std::vector<int>> permutations;
  OrthogonalAction action;

  int orbits() const { return static_cast<int>(representatives.rows()); }
  int group_order() const { return action.order(); }
  int lifted_size() const { return static_cast<int>(lifted.rows()); }
  int index(int orbit, int element) const { return orbit * group_order() + element; }
};

/// Closes the generators under multiplication. Matrices within tol
/// (max-abs entry) are identified; a gap in (tol, 10 tol] is reported as
/// NumericalAmbiguity. The identity is element 0.
OrthogonalAction close_group(const std::vector<Eigen::MatrixXd>& generators,
                             double tol = 1e-8, int max_order = 1024);

struct OrbitDistance {
  double distance;
  int element;  // minimizing g, lowest index on ties
};

/// min_g |x - g y|.
double quotient_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         const OrthogonalAction& action);
OrbitDistance quotient_distance_argmin(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                       const OrthogonalAction& action);

/// Lifts the representatives (rows of reps) to their full orbits. Orbits
/// must be free and distinct: lifted points closer than tol * scale, scale
/// the largest representative norm, raise NonFreeOrbit (same orbit) or
/// OrbitCollision (different orbits).
QuotientConfiguration lift_orbits(const Eigen::MatrixXd& reps, const OrthogonalAction& action,
                                  double tol = 1e-9);

/// pi(g) as N x N 0/1 matrices with pi(g) e_(k,h) = e_(k,gh).
std::vector<Eigen::MatrixXd> regular_permutation_matrices(const QuotientConfiguration& q);

/// max_g max_ij |T pi(g) - pi(g) T|.
double equivariance_defect(const Eigen::MatrixXd& t, const std::vector<Eigen::MatrixXd>& perms);

struct QngPairReport {
  int i, j;
  double target;     // quotient_distance(rep_i, rep_j)^alpha
  double achieved;   // min_g |points_i - pi(g) points_j|
  double abs_error;
  int achieved_element;   // g realizing `achieved`
  int geometric_element;  // g realizing the quotient distance in E^m
};

struct QngEmbedding {
  static constexpr std::string_view kScaleNote =
      "Q(n,G) carries the standard Euclidean structure of R[G]^n restricted to L_1(n,G); "
      "the scalar product is induced from the snowflaked lift, so at alpha = 0 distinct "
      "orbits sit at distance 1 rather than the coordinate-simplex edge sqrt(2).";

  double alpha = 0.0;
  /// n x N; row k is the image of orbit k, with coordinates summing to 1.
  Eigen::MatrixXd points;
  /// Symmetric square root T of B = -1/2 P D^alpha P; T ones = 0.
  Eigen::MatrixXd gram_root;
  /// Eigenvalues of B, descending.
  Eigen::VectorXd b_spectrum;
  /// Eigenvalues of B with |lambda| <= 1e-9 * lambda_max.
  int b_zero_eigenvalues = 0;
  /// max_g |B pi(g) - pi(g) B| relative to 1 + max |B|.
  double invariance_defect = 0.0;
  double equivariance_defect = 0.0;
  std::vector<std::vector<int>> permutations;
  std::vector<QngPairReport> report;
  double max_abs_error = 0.0;
  double max_target = 0.0;
};

class QngError : public Error {
 public:
  QngError(ErrorCode code, const std::string& what, QngEmbedding partial)
      : Error(code, what), partial_(std::move(partial)) {}
  const QngEmbedding& partial() const { return partial_; }

 private:
  QngEmbedding partial_;
};

/// Embeds the snowflake of the n orbits of q into Q(n,G), 0 <= alpha < 1:
/// double-centers the snowflaked squared distances of the lift, takes the
/// equivariant square root T of the resulting form and places orbit k at
/// ones/N + T e_(k, identity). Every pairwise quotient distance is then
/// checked against quotient_distance(rep_i, rep_j)^alpha.
/// Throws InvarianceViolation or VerificationFailure (carrying the partial
/// result) when the checks exceed tol.
QngEmbedding qng_embed(const QuotientConfiguration& q, SnowflakeExponent a, double tol = 1e-8);

/// Distance in Q(n,G) between embedded orbits i and j.
OrbitDistance qng_distance(const QngEmbedding& e, int i, int j);

}  // namespace snowflake
