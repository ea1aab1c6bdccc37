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

#include "snowflake/group_quotient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "snowflake/embedding.hpp"
#include "snowflake/linalg.hpp"

namespace snowflake {
namespace {

constexpr int kExhaustiveAssociativityOrder = 64;
constexpr int kAssociativitySamples = 20000;
constexpr double kRankTol = 1e-9;

[[noreturn]] void invalid_group(const std::string& what) {
  throw Error(ErrorCode::InvalidGroup, what);
}

// Index of the matrix in `elements` equal to m within tol, or -1. A nearest
// match in (tol, 10 tol] cannot be classified and throws.
int find_element(const std::vector<Eigen::MatrixXd>& elements, const Eigen::MatrixXd& m,
                 double tol) {
  for (std::size_t e = 0; e < elements.size(); ++e) {
    const double diff = linalg::max_abs_diff(elements[e], m);
    if (diff <= tol) return static_cast<int>(e);
    if (diff <= 10.0 * tol) {
      std::ostringstream msg;
      msg << "product differs from element " << e << " by " << diff
          << ", inside the ambiguity band (" << tol << ", " << 10.0 * tol << "]";
      throw Error(ErrorCode::NumericalAmbiguity, msg.str());
    }
  }
  return -1;
}

void require_orthogonal(const Eigen::MatrixXd& m, double tol, std::size_t index) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "group matrices must be square and non-empty");
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(m.rows(), m.cols());
  const double defect = linalg::max_abs_diff(m.transpose() * m, identity);
  if (!(defect <= tol)) {
    std::ostringstream msg;
    msg << "matrix " << index << " is not orthogonal: |M^T M - I| = " << defect;
    throw Error(ErrorCode::NotOrthogonal, msg.str());
  }
}

FiniteGroup table_from_matrices(const std::vector<Eigen::MatrixXd>& elements, double tol) {
  const std::size_t order = elements.size();
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t h = 0; h < order; ++h) {
      const int gh = find_element(elements, elements[g] * elements[h], tol);
      if (gh < 0) {
        std::ostringstream msg;
        msg << "product of elements " << g << " and " << h << " is not in the group";
        throw Error(ErrorCode::NotClosed, msg.str());
      }
      table[g][h] = gh;
    }
  }
  return FiniteGroup::from_table(std::move(table));
}

// (pi(g) v)[perm[i]] = v[i].
Eigen::VectorXd permute(const std::vector<int>& perm, const Eigen::VectorXd& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = v[static_cast<Eigen::Index>(i)];
  return out;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const int order = static_cast<int>(table.size());
  if (order == 0) invalid_group("group table is empty");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != order) invalid_group("group table is not square");
    for (int v : row) {
      if (v < 0 || v >= order) invalid_group("group table entry out of range");
    }
  }
  // Latin square.
  for (int g = 0; g < order; ++g) {
    std::vector<char> in_row(order, 0), in_col(order, 0);
    for (int h = 0; h < order; ++h) {
      if (in_row[table[g][h]]++ || in_col[table[h][g]]++) {
        std::ostringstream msg;
        msg << "group table is not a Latin square at row/column " << g;
        invalid_group(msg.str());
      }
    }
  }
  FiniteGroup group;
  group.identity_ = -1;
  for (int e = 0; e < order && group.identity_ < 0; ++e) {
    bool is_identity = true;
    for (int g = 0; g < order && is_identity; ++g) {
      is_identity = table[e][g] == g && table[g][e] == g;
    }
    if (is_identity) group.identity_ = e;
  }
  if (group.identity_ < 0) invalid_group("group table has no identity element");

  group.inverse_.assign(order, -1);
  for (int g = 0; g < order; ++g) {
    for (int h = 0; h < order; ++h) {
      if (table[g][h] == group.identity_) group.inverse_[g] = h;
    }
    if (table[group.inverse_[g]][g] != group.identity_) {
      std::ostringstream msg;
      msg << "element " << g << " has no two-sided inverse";
      invalid_group(msg.str());
    }
  }

  auto check_triple = [&](int a, int b, int c) {
    if (table[table[a][b]][c] != table[a][table[b][c]]) {
      std::ostringstream msg;
      msg << "group table is not associative at (" << a << ", " << b << ", " << c << ")";
      invalid_group(msg.str());
    }
  };
  if (order <= kExhaustiveAssociativityOrder) {
    for (int a = 0; a < order; ++a)
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c) check_triple(a, b, c);
  } else {
    std::mt19937 rng(20260101u);
    std::uniform_int_distribution<int> pick(0, order - 1);
    for (int s = 0; s < kAssociativitySamples; ++s) check_triple(pick(rng), pick(rng), pick(rng));
  }
  group.table_ = std::move(table);
  return group;
}

OrthogonalAction::OrthogonalAction(FiniteGroup group, std::vector<Eigen::MatrixXd> matrices,
                                   double tol)
    : group_(std::move(group)), dim_(matrices.front().rows()), matrices_(std::move(matrices)) {
  for (std::size_t g = 0; g < matrices_.size(); ++g) {
    if (matrices_[g].rows() != dim_) {
      throw Error(ErrorCode::DimensionMismatch, "group matrices differ in dimension");
    }
    require_orthogonal(matrices_[g], tol, g);
  }
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim_, dim_);
  if (linalg::max_abs_diff(matrix(group_.identity()), identity) > tol) {
    invalid_group("identity element is not represented by the identity matrix");
  }
  for (int g = 0; g < order(); ++g) {
    for (int h = 0; h < order(); ++h) {
      const double defect = linalg::max_abs_diff(matrix(group_.multiply(g, h)),
                                                 matrix(g) * matrix(h));
      if (defect > tol) {
        std::ostringstream msg;
        msg << "matrices do not form a homomorphism at (" << g << ", " << h
            << "): defect " << defect;
        invalid_group(msg.str());
      }
    }
  }
}

OrthogonalAction OrthogonalAction::from_matrices(std::vector<Eigen::MatrixXd> matrices,
                                                 double tol) {
  if (matrices.empty()) invalid_group("no group matrices given");
  for (std::size_t g = 0; g < matrices.size(); ++g) require_orthogonal(matrices[g], tol, g);
  for (std::size_t g = 0; g < matrices.size(); ++g) {
    if (matrices[g].rows() != matrices.front().rows()) {
      throw Error(ErrorCode::DimensionMismatch, "group matrices differ in dimension");
    }
    for (std::size_t h = 0; h < g; ++h) {
      if (linalg::max_abs_diff(matrices[g], matrices[h]) <= tol) {
        std::ostringstream msg;
        msg << "group matrices " << h << " and " << g << " coincide";
        invalid_group(msg.str());
      }
    }
  }
  FiniteGroup group = table_from_matrices(matrices, tol);
  return OrthogonalAction(std::move(group), std::move(matrices), tol);
}

OrthogonalAction close_group(const std::vector<Eigen::MatrixXd>& generators, double tol,
                             int max_order) {
  if (generators.empty()) invalid_group("close_group needs at least one generator");
  for (std::size_t s = 0; s < generators.size(); ++s) {
    require_orthogonal(generators[s], tol, s);
    if (generators[s].rows() != generators.front().rows()) {
      throw Error(ErrorCode::DimensionMismatch, "generators differ in dimension");
    }
  }
  const Eigen::Index dim = generators.front().rows();
  std::vector<Eigen::MatrixXd> elements{Eigen::MatrixXd::Identity(dim, dim)};
  // Breadth-first over words in the generators; right-multiplying every
  // element by every generator reaches the whole group since it is finite.
  for (std::size_t next = 0; next < elements.size(); ++next) {
    for (const auto& s : generators) {
      Eigen::MatrixXd product = elements[next] * s;
      if (find_element(elements, product, tol) >= 0) continue;
      if (static_cast<int>(elements.size()) >= max_order) {
        std::ostringstream msg;
        msg << "group closure exceeds " << max_order << " elements";
        throw Error(ErrorCode::OrderExceeded, msg.str());
      }
      elements.push_back(std::move(product));
    }
  }
  FiniteGroup group = table_from_matrices(elements, tol);
  return OrthogonalAction(std::move(group), std::move(elements), tol);
}

OrbitDistance quotient_distance_argmin(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                       const OrthogonalAction& action) {
  if (x.size() != action.dim() || y.size() != action.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "point dimension does not match the action");
  }
  OrbitDistance best{std::numeric_limits<double>::infinity(), -1};
  for (int g = 0; g < action.order(); ++g) {
    const double d = (x - action.matrix(g) * y).norm();
    if (d < best.distance) best = {d, g};
  }
  return best;
}

double quotient_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                         const OrthogonalAction& action) {
  return quotient_distance_argmin(x, y, action).distance;
}

QuotientConfiguration lift_orbits(const Eigen::MatrixXd& reps, const OrthogonalAction& action,
                                  double tol) {
  if (reps.rows() == 0) throw Error(ErrorCode::DimensionMismatch, "no representatives given");
  if (reps.cols() != action.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "representative dimension does not match the action");
  }
  if (!reps.allFinite()) {
    throw Error(ErrorCode::NonFiniteValue, "representatives have non-finite coordinates");
  }
  const int n = static_cast<int>(reps.rows());
  const int order = action.order();
  Eigen::MatrixXd lifted(static_cast<Eigen::Index>(n) * order, action.dim());
  for (int k = 0; k < n; ++k) {
    for (int h = 0; h < order; ++h) {
      lifted.row(k * order + h) = (action.matrix(h) * reps.row(k).transpose()).transpose();
    }
  }
  double scale = reps.rowwise().norm().maxCoeff();
  if (scale == 0.0) scale = 1.0;
  const double separation = tol * scale;
  for (int i = 0; i < lifted.rows(); ++i) {
    for (int j = i + 1; j < lifted.rows(); ++j) {
      if ((lifted.row(i) - lifted.row(j)).norm() > separation) continue;
      const int ki = i / order, hi = i % order, kj = j / order, hj = j % order;
      std::ostringstream msg;
      if (ki == kj) {
        msg << "orbit of representative " << ki << " is not free: elements " << hi
            << " and " << hj << " give the same point";
        throw OrbitError(ErrorCode::NonFreeOrbit, msg.str(), ki, hi, kj, hj);
      }
      msg << "representatives " << ki << " and " << kj << " lie in the same orbit";
      throw OrbitError(ErrorCode::OrbitCollision, msg.str(), ki, hi, kj, hj);
    }
  }

  std::vector<std::vector<int>> perms(static_cast<std::size_t>(order),
                                      std::vector<int>(lifted.rows()));
  for (int g = 0; g < order; ++g) {
    for (int k = 0; k < n; ++k) {
      for (int h = 0; h < order; ++h) {
        perms[g][k * order + h] = k * order + action.group().multiply(g, h);
      }
    }
  }
  return QuotientConfiguration{reps, std::move(lifted), std::move(perms), action};
}

std::vector<Eigen::MatrixXd> regular_permutation_matrices(const QuotientConfiguration& q) {
  const int size = q.lifted_size();
  std::vector<Eigen::MatrixXd> out;
  out.reserve(q.permutations.size());
  for (const auto& perm : q.permutations) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (int i = 0; i < size; ++i) m(perm[i], i) = 1.0;
    out.push_back(std::move(m));
  }
  return out;
}

double equivariance_defect(const Eigen::MatrixXd& t, const std::vector<Eigen::MatrixXd>& perms) {
  double worst = 0.0;
  for (const auto& p : perms) {
    if (p.rows() != t.rows() || p.cols() != t.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "permutation and matrix sizes differ");
    }
    worst = std::max(worst, linalg::max_abs_diff(t * p, p * t));
  }
  return worst;
}

OrbitDistance qng_distance(const QngEmbedding& e, int i, int j) {
  const Eigen::VectorXd x = e.points.row(i).transpose();
  const Eigen::VectorXd y = e.points.row(j).transpose();
  OrbitDistance best{std::numeric_limits<double>::infinity(), -1};
  for (std::size_t g = 0; g < e.permutations.size(); ++g) {
    const double d = (x - permute(e.permutations[g], y)).norm();
    if (d < best.distance) best = {d, static_cast<int>(g)};
  }
  return best;
}

QngEmbedding qng_embed(const QuotientConfiguration& q, SnowflakeExponent a, double tol) {
  const double alpha = a.value();
  if (!(alpha < 1.0)) {
    throw Error(ErrorCode::DomainError,
                "qng_embed covers 0 <= alpha < 1; alpha = 1 is outside the construction");
  }
  const int n = q.orbits();
  const int size = q.lifted_size();
  const int identity = q.action.group().identity();

  // 1. Snowflaked squared distances of the lift, d^{2 alpha}.
  Eigen::MatrixXd d_alpha = Eigen::MatrixXd::Zero(size, size);
  for (int i = 0; i < size; ++i) {
    for (int j = i + 1; j < size; ++j) {
      const double dist = (q.lifted.row(i) - q.lifted.row(j)).norm();
      d_alpha(i, j) = d_alpha(j, i) = alpha == 0.0 ? 1.0 : std::pow(dist, 2.0 * alpha);
    }
  }

  QngEmbedding out;
  out.alpha = alpha;
  out.permutations = q.permutations;

  // 2-3. Induced scalar product and its G-invariance.
  const Eigen::MatrixXd b = gram_from_distances(d_alpha);
  const double b_scale = 1.0 + b.cwiseAbs().maxCoeff();
  for (const auto& perm : q.permutations) {
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        out.invariance_defect =
            std::max(out.invariance_defect, std::abs(b(perm[i], perm[j]) - b(i, j)) / b_scale);
      }
    }
  }
  out.b_spectrum = linalg::descending_eigen(b).values;
  const double b_max = out.b_spectrum.size() ? out.b_spectrum[0] : 0.0;
  for (Eigen::Index k = 0; k < out.b_spectrum.size(); ++k) {
    if (std::abs(out.b_spectrum[k]) <= kRankTol * b_max) ++out.b_zero_eigenvalues;
  }
  if (out.invariance_defect > tol) {
    std::ostringstream msg;
    msg << "induced scalar product is not G-invariant: defect " << out.invariance_defect;
    throw QngError(ErrorCode::InvarianceViolation, msg.str(), std::move(out));
  }

  // 4. T = B^{1/2}, computed on the sum-zero subspace so that T ones = 0
  // holds to rounding instead of picking up sqrt of the clamped zero mode.
  const Eigen::MatrixXd v = linalg::sum_zero_basis(size);
  Eigen::MatrixXd c = v.transpose() * b * v;
  c = 0.5 * (c + c.transpose()).eval();
  const auto spectrum = linalg::descending_eigen(c);
  const Eigen::VectorXd roots = spectrum.values.cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd w = v * spectrum.vectors;
  out.gram_root = w * roots.asDiagonal() * w.transpose();
  out.gram_root = 0.5 * (out.gram_root + out.gram_root.transpose()).eval();
  out.equivariance_defect =
      equivariance_defect(out.gram_root, regular_permutation_matrices(q));

  // 5. Orbit k goes to ones/N + T e_(k, identity).
  out.points.resize(n, size);
  for (int k = 0; k < n; ++k) {
    out.points.row(k) =
        (Eigen::VectorXd::Constant(size, 1.0 / size) + out.gram_root.col(q.index(k, identity)))
            .transpose();
  }

  // 6. Quotient distances in Q(n,G) against the snowflaked quotient metric.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const OrbitDistance geometric = quotient_distance_argmin(
          q.representatives.row(i).transpose(), q.representatives.row(j).transpose(), q.action);
      const OrbitDistance achieved = qng_distance(out, i, j);
      const double target = alpha == 0.0 ? 1.0 : std::pow(geometric.distance, alpha);
      QngPairReport row{i,      j, target, achieved.distance, std::abs(achieved.distance - target),
                        achieved.element, geometric.element};
      out.max_abs_error = std::max(out.max_abs_error, row.abs_error);
      out.max_target = std::max(out.max_target, target);
      out.report.push_back(row);
    }
  }
  if (out.max_abs_error > tol * (1.0 + out.max_target)) {
    std::ostringstream msg;
    msg << "quotient distances miss their targets by up to " << out.max_abs_error;
    throw QngError(ErrorCode::VerificationFailure, msg.str(), std::move(out));
  }
  return out;
}

}  // namespace snowflake
