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


#include "snowflake/negative_type.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "snowflake/linalg.hpp"

namespace snowflake {
namespace {

FiniteMetricSpace claw() {
  Eigen::MatrixXd d(4, 4);
  d << 0, 2, 1, 1, 2, 0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0;
  return validate_metric(d, 1e-12);
}

FiniteMetricSpace cloud_metric(const Eigen::MatrixXd& p) { return euclidean_metric(PointCloud(p)); }

TEST(QuadraticFormTest, MatchesLoops) {
  testing::Generator gen(21);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = gen.integer(1, 12);
    const Eigen::MatrixXd d = gen.graph_metric(n);
    const Eigen::VectorXd lam = gen.sum_zero(n);
    EXPECT_NEAR(quadratic_form(d, lam), testing::form_by_loops(d, lam), 1e-12);
  }
}

TEST(QuadraticFormTest, DimensionMismatch) {
  try {
    quadratic_form(Eigen::MatrixXd::Zero(3, 3), Eigen::VectorXd::Zero(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(CheckNegativeTypeTest, ClawIsRejectedWithWitness) {
  const auto x = claw();
  const auto r = check_negative_type(x);
  EXPECT_FALSE(r.is_negative_type);
  EXPECT_FALSE(r.embeddable());
  EXPECT_NEAR(r.min_eigenvalue, -0.25, 1e-14);
  EXPECT_NEAR(r.spectral_radius, 2.0, 1e-14);
  ASSERT_TRUE(r.witness.has_value());
  const Eigen::VectorXd w = *r.witness;
  EXPECT_NEAR(w.sum(), 0.0, 1e-14);
  EXPECT_NEAR(w.norm(), 1.0, 1e-14);
  const Eigen::MatrixXd d = squared_distance_matrix(x);
  EXPECT_NEAR(quadratic_form(d, w), 0.5, 1e-13);
  // Up to sign, (1/2, 1/2, -1/2, -1/2); scaled to (1, 1, -1, -1) the form is +2.
  const Eigen::VectorXd scaled = w / std::abs(w[0]);
  EXPECT_NEAR(quadratic_form(d, scaled), 2.0, 1e-12);
  EXPECT_NEAR(std::abs(w[0] + w[1]), 1.0, 1e-13);
}

TEST(CheckNegativeTypeTest, ClawSpectrumMatchesOracle) {
  const Eigen::MatrixXd d = squared_distance_matrix(claw());
  const auto s = linalg::centered_form_spectrum(d);
  const auto oracle = testing::nontrivial_spectrum(d);
  ASSERT_EQ(s.values.size(), 3);
  EXPECT_NEAR(s.values[0], 2.0, 1e-14);
  EXPECT_NEAR(s.values[1], 0.5, 1e-14);
  EXPECT_NEAR(s.values[2], -0.25, 1e-14);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(s.values[k], oracle[2 - k], 1e-13);
}

TEST(CheckNegativeTypeTest, EquilateralTriangle) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Ones(3, 3) - Eigen::MatrixXd::Identity(3, 3);
  const auto r = check_negative_type(validate_metric(d, 1e-12));
  EXPECT_TRUE(r.is_negative_type);
  EXPECT_TRUE(r.is_strict);
  EXPECT_NEAR(r.min_eigenvalue, 0.5, 1e-14);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(CheckNegativeTypeTest, SinglePoint) {
  const auto r = check_negative_type(validate_metric(Eigen::MatrixXd::Zero(1, 1), 0.0));
  EXPECT_TRUE(r.is_negative_type);
  EXPECT_TRUE(std::isinf(r.min_eigenvalue));
}

TEST(CheckNegativeTypeTest, CollinearIsDegenerate) {
  Eigen::MatrixXd p(3, 1);
  p << 0, 1, 2;
  const auto r = check_negative_type(cloud_metric(p));
  EXPECT_TRUE(r.is_negative_type);
  EXPECT_FALSE(r.is_strict);
  ASSERT_TRUE(r.witness.has_value());
  // Affine dependence of 0, 1, 2 is proportional to (1, -2, 1).
  const Eigen::VectorXd w = *r.witness;
  EXPECT_NEAR(std::abs(w[0] / w[1]), 0.5, 1e-9);
  EXPECT_NEAR(w[0] / w[2], 1.0, 1e-9);
}

TEST(CheckNegativeTypeTest, EuclideanMetricsAreAccepted) {
  testing::Generator gen(22);
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = cloud_metric(gen.cloud(gen.integer(1, 30), gen.integer(1, 8)));
    const auto r = check_negative_type(x);
    EXPECT_TRUE(r.is_negative_type) << "trial " << trial << " min " << r.min_eigenvalue;
  }
}

TEST(CheckNegativeTypeTest, SpectrumAgreesWithJacobiOracle) {
  testing::Generator gen(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = gen.integer(2, 12);
    const Eigen::MatrixXd d = gen.graph_metric(n);
    const auto r = check_negative_type(validate_metric(d, 1e-12));
    const auto oracle = testing::nontrivial_spectrum(d.cwiseProduct(d));
    const double scale = std::max(1.0, r.spectral_radius);
    EXPECT_NEAR(r.min_eigenvalue, oracle.front(), 1e-11 * scale);
    EXPECT_EQ(r.is_negative_type, oracle.front() >= -1e-9 * r.spectral_radius);
  }
}

TEST(CheckNegativeTypeTest, WitnessViolatesTheInequality) {
  testing::Generator gen(24);
  int violated = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto x = validate_metric(gen.graph_metric(gen.integer(4, 10)), 1e-12);
    const auto r = check_negative_type(x);
    if (r.is_negative_type) continue;
    ++violated;
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_NEAR(r.witness->sum(), 0.0, 1e-12);
    EXPECT_GT(quadratic_form(squared_distance_matrix(x), *r.witness), 0.0);
    EXPECT_NEAR(quadratic_form(squared_distance_matrix(x), *r.witness), -2.0 * r.min_eigenvalue,
                1e-10 * r.spectral_radius);
  }
  EXPECT_GT(violated, 10);
}

TEST(CheckStrictNegativeTypeTest, SnowflakeOfCollinearIsStrict) {
  Eigen::MatrixXd p(3, 1);
  p << 0, 1, 2;
  const auto x = cloud_metric(p);
  const auto r = check_strict_negative_type(x, SnowflakeExponent(0.5));
  EXPECT_TRUE(r.is_strict);
  EXPECT_NEAR(r.min_eigenvalue, 0.3333333333333334, 1e-14);

  try {
    check_strict_negative_type(x, SnowflakeExponent(1.0));
    FAIL();
  } catch (const NotStrictError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStrict);
    EXPECT_TRUE(e.report().is_negative_type);
    EXPECT_TRUE(e.report().witness.has_value());
  }
}

TEST(CheckStrictNegativeTypeTest, ErrorPaths) {
  try {
    check_strict_negative_type(claw(), SnowflakeExponent(0.5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEmbeddable);
  }
  Eigen::MatrixXd p(2, 1);
  p << 0, 1;
  try {
    check_strict_negative_type(cloud_metric(p), SnowflakeExponent(0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DomainError);
  }
}

TEST(CheckStrictNegativeTypeTest, RandomSnowflakesAreStrict) {
  testing::Generator gen(25);
  for (int trial = 0; trial < 100; ++trial) {
    // Clouds in low dimension so most are degenerate at alpha = 1.
    const auto x = cloud_metric(gen.cloud(gen.integer(2, 12), gen.integer(1, 3), 0.05));
    const double a = gen.uniform(0.1, 0.9);
    EXPECT_NO_THROW(check_strict_negative_type(x, SnowflakeExponent(a))) << "alpha " << a;
  }
}

TEST(GeometricFormTest, UnitSegment) {
  Eigen::MatrixXd p(2, 1);
  p << 0, 1;
  Eigen::VectorXd lam(2);
  lam << 1, -1;
  const auto v = geometric_form_check(PointCloud(p), lam);
  EXPECT_DOUBLE_EQ(v.lhs, -2.0);
  EXPECT_DOUBLE_EQ(v.rhs, -2.0);
}

TEST(GeometricFormTest, RandomInstances) {
  testing::Generator gen(26);
  for (int trial = 0; trial < 500; ++trial) {
    const Eigen::Index n = gen.integer(2, 12);
    const Eigen::MatrixXd p = gen.cloud(n, gen.integer(1, 8));
    const Eigen::VectorXd lam = gen.admissible(n);
    const auto v = geometric_form_check(PointCloud(p), lam);
    EXPECT_NEAR(v.lhs, v.rhs, 1e-12 * (1 + std::abs(v.lhs)));
    EXPECT_NEAR(v.lhs, testing::form_by_loops(testing::squared_distances_of(p), lam),
                1e-12 * (1 + std::abs(v.lhs)));
    EXPECT_LE(v.lhs, 0.0);
  }
}

TEST(GeometricFormTest, BadPartition) {
  Eigen::MatrixXd p(3, 1);
  p << 0, 1, 2;
  Eigen::VectorXd lam(3);
  lam << 0.5, 0.5, -0.5;
  try {
    geometric_form_check(PointCloud(p), lam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadPartition);
  }
}

TEST(GeneralPositionTest, Simplex) {
  Eigen::MatrixXd p(3, 2);
  p << 0, 0, 1, 0, 0, 1;
  const auto r = general_position_certificate(PointCloud(p));
  EXPECT_TRUE(r.is_strict);
  EXPECT_FALSE(r.witness.has_value());
}

TEST(GeneralPositionTest, DependenceWitness) {
  testing::Generator gen(27);
  for (int trial = 0; trial < 50; ++trial) {
    // n points in E^m with n > m + 1 are always affinely dependent.
    const Eigen::Index m = gen.integer(1, 4);
    const Eigen::Index n = m + gen.integer(2, 5);
    const Eigen::MatrixXd p = gen.cloud(n, m);
    const auto r = general_position_certificate(PointCloud(p));
    EXPECT_FALSE(r.is_strict);
    ASSERT_TRUE(r.witness.has_value());
    const Eigen::VectorXd& w = *r.witness;
    EXPECT_NEAR(w.sum(), 0.0, 1e-12);
    EXPECT_NEAR((p.transpose() * w).norm(), 0.0, 1e-7);
  }
}

}  // namespace
}  // namespace snowflake
