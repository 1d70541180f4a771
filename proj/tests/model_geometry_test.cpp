// Copyright 2026 The alexglue Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "alexglue/model_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_oracles.hpp"

namespace alexglue::model {
namespace {

using std::numbers::pi;

TEST(ComparisonAngle, EquilateralEuclidean) {
  EXPECT_NEAR(comparison_angle(0, 1, 1, 1), pi / 3, 1e-15);
}

TEST(ComparisonAngle, DegenerateCollinear) {
  EXPECT_DOUBLE_EQ(comparison_angle(0, 2, 1, 1), pi);
  EXPECT_DOUBLE_EQ(comparison_angle(0, 0, 1, 1), 0.0);
}

TEST(ComparisonAngle, SphericalOctant) {
  EXPECT_NEAR(comparison_angle(1, pi / 2, pi / 2, pi / 2), pi / 2, 1e-14);
}

TEST(ComparisonAngle, HyperbolicMatchesBisection) {
  const double expected = oracle::hyperbolic_angle_by_bisection(1.5, 1.0, 1.0);
  EXPECT_NEAR(comparison_angle(-1, 1.5, 1.0, 1.0), expected, 1e-12);
}

TEST(ComparisonAngle, CurvatureScaling) {
  // Scaling the metric by r maps kappa to kappa / r^2.
  const double r = 3.0;
  EXPECT_NEAR(comparison_angle(-1, 0.7, 0.5, 0.4),
              comparison_angle(-1 / (r * r), 0.7 * r, 0.5 * r, 0.4 * r), 1e-12);
}

TEST(ComparisonAngle, RandomHyperbolicAndSpherical) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.05, 1.4);
  for (int i = 0; i < 500; ++i) {
    const double b = u(rng), c = u(rng);
    const double a = std::abs(b - c) + (b + c - std::abs(b - c)) * std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    EXPECT_NEAR(comparison_angle(-1, a, b, c), oracle::hyperbolic_angle_by_bisection(a, b, c), 1e-10);
    EXPECT_NEAR(comparison_angle(1, a, b, c), oracle::spherical_angle_by_bisection(a, b, c), 1e-10);
  }
}

TEST(ComparisonAngle, Errors) {
  EXPECT_THROW(comparison_angle(0, 3, 1, 1), Error);
  try {
    comparison_angle(0, 1, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroSide);
  }
  try {
    comparison_angle(1, 3, 2, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidTriangle);
  }
  // Within the clamping tolerance: accepted as degenerate.
  EXPECT_DOUBLE_EQ(comparison_angle(0, 2 + 1e-12, 1, 1), pi);
}

TEST(ComparisonAngle, LawOfCosines) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const auto [a, b, c] = oracle::random_planar_triangle(rng);
    const double got = std::cos(comparison_angle(0, a, b, c));
    EXPECT_NEAR(got, (b * b + c * c - a * a) / (2 * b * c), 1e-12);
  }
}

TEST(ComparisonAngle, MonotoneInOppositeSide) {
  for (double kappa : {-1.0, 0.0, 1.0}) {
    double prev = -1;
    for (int i = 0; i <= 200; ++i) {
      const double a = 0.3 + 0.7 * i / 200.0;  // b = 0.6, c = 0.4 spans [0.2, 1]
      const double t = comparison_angle(kappa, std::min(a, 1.0), 0.6, 0.4);
      EXPECT_GE(t, prev);
      prev = t;
    }
  }
}

TEST(ComparisonAngle, ContinuousInKappa) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    const auto [a, b, c] = oracle::random_planar_triangle(rng);
    for (double k : {-1.0, 0.0, 0.5}) {
      EXPECT_NEAR(comparison_angle(k, a, b, c), comparison_angle(k + 1e-6, a, b, c), 1e-4);
    }
  }
}

TEST(AlexandrovLemma, CollinearEquality) {
  // q=0, x=1, p=2, s=3 on a line.
  const auto r = alexandrov_lemma_predicates(0, 2, 3, 1, 1, 1);
  EXPECT_TRUE(r.first);
  EXPECT_TRUE(r.second);
}

TEST(AlexandrovLemma, RandomPlanarAgreement) {
  std::mt19937_64 rng(2024);
  int disagreements = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto cfg = oracle::random_lemma_configuration(rng);
    const auto r = alexandrov_lemma_predicates(0, cfg.dqp, cfg.dqs, cfg.dqx, cfg.dpx, cfg.dps);
    disagreements += r.first != r.second;
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(AlexandrovLemma, ModelConfigurationsAgree) {
  // Distances realized in the model plane itself always give agreement.
  std::mt19937_64 rng(99);
  int disagreements = 0;
  for (double kappa : {-1.0, 1.0}) {
    for (int i = 0; i < 500; ++i) {
      const auto cfg = oracle::random_model_configuration(rng, kappa);
      const auto r = alexandrov_lemma_predicates(kappa, cfg.dqp, cfg.dqs, cfg.dqx, cfg.dpx, cfg.dps);
      disagreements += r.first != r.second;
    }
  }
  EXPECT_EQ(disagreements, 0);
}

TEST(AlexandrovLemma, PerturbedConfigurationBothFalse) {
  // Planar distances give equality on both sides; lengthening |ps| makes
  // the angle at q towards s strictly larger than towards x.
  const auto cfg = oracle::planar_distances({0, 0}, {3, 0}, {1.5, 0.8}, {1, 0});
  const auto planar = alexandrov_lemma_predicates(0, cfg.dqp, cfg.dqs, cfg.dqx, cfg.dpx, cfg.dps);
  EXPECT_TRUE(planar.first && planar.second);
  for (double delta : {1e-6, 1e-3, 0.05}) {
    const auto r = alexandrov_lemma_predicates(0, cfg.dqp, cfg.dqs, cfg.dqx, cfg.dpx, cfg.dps + delta);
    EXPECT_FALSE(r.first) << delta;
    EXPECT_FALSE(r.second) << delta;
  }
}

TEST(AlexandrovLemma, InvalidConfiguration) {
  EXPECT_THROW(alexandrov_lemma_predicates(0, 1, 1, 2, 1, 1), Error);
  try {
    alexandrov_lemma_predicates(0, 1, 2, 1, 5, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidConfiguration);
  }
}

}  // namespace
}  // namespace alexglue::model
