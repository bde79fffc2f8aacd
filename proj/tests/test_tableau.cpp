/*
 * Copyright 2026 The symoc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "symoc/tableau.hpp"
#include "test_support.hpp"

namespace symoc {
namespace {

double brute_residual(const Matrix &A, const Matrix &At, const Vector &b) {
  double worst = 0.0;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      worst = std::max(worst, std::abs(b[i] * At(i, j) + b[j] * A(j, i) - b[i] * b[j]));
  return worst;
}

TEST(Tableau, SymplecticEulerAdjointIsOne) {
  const ButcherPair p = symplectic_euler();
  EXPECT_EQ(p.s, 1);
  EXPECT_TRUE(p.explicit_flag);
  EXPECT_DOUBLE_EQ(p.A_tilde(0, 0), 1.0);
}

TEST(Tableau, MidpointIsSelfAdjoint) {
  const ButcherPair p = implicit_midpoint();
  EXPECT_DOUBLE_EQ(p.A(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(p.b[0], 1.0);
  EXPECT_DOUBLE_EQ(p.A_tilde(0, 0), 0.5);
  EXPECT_FALSE(p.explicit_flag);
  EXPECT_DOUBLE_EQ(p.b[0] * p.A_tilde(0, 0) + p.b[0] * p.A(0, 0), p.b[0] * p.b[0]);
}

TEST(Tableau, LobattoStylePairEntrywise) {
  Matrix A(2, 2);
  A << 0.0, 0.0, 0.5, 0.5;
  const Vector b = testing::vec({0.5, 0.5});
  const ButcherPair p = make_adjoint_pair(A, b);
  Matrix expected(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      expected(i, j) = b[j] - b[j] * A(j, i) / b[i];
  EXPECT_EQ(p.A_tilde, expected);
  EXPECT_LE(brute_residual(A, p.A_tilde, b), 1e-15);
  EXPECT_FALSE(p.explicit_flag);
}

TEST(Tableau, RandomPairsAreSymplecticAndInvolutive) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const int s = 1 + trial % 4;
    const auto [A, b] = testing::random_tableau(rng, s);
    const ButcherPair p = make_adjoint_pair(A, b);
    EXPECT_LE(brute_residual(A, p.A_tilde, b), 1e-14);
    EXPECT_LE(p.symplecticity_residual(), 1e-14);
    EXPECT_LE((adjoint_coefficients(p.A_tilde, b) - A).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Tableau, RejectsBadWeights) {
  const Matrix A = Matrix::Zero(2, 2);
  try {
    make_adjoint_pair(A, testing::vec({1.0, 0.0}));
    FAIL();
  } catch (const TableauError &e) {
    EXPECT_NE(std::string(e.what()).find("non-positive weight"), std::string::npos);
  }
  try {
    make_adjoint_pair(A, testing::vec({0.5, 0.6}));
    FAIL();
  } catch (const TableauError &e) {
    EXPECT_NE(std::string(e.what()).find("inconsistent weights"), std::string::npos);
  }
  EXPECT_THROW(make_adjoint_pair(Matrix::Zero(2, 3), testing::vec({0.5, 0.5})), TableauError);
}

TEST(Tableau, NamedLookup) {
  EXPECT_EQ(named_tableau("symplectic-euler").A, symplectic_euler().A);
  EXPECT_EQ(named_tableau("implicit-midpoint").A, implicit_midpoint().A);
  EXPECT_THROW(named_tableau("rk4"), TableauError);
}

TEST(StepSize, ExplicitAlwaysOk) {
  const StepSizeCheck c = check_step_size(symplectic_euler(), 1e6, 10.0);
  EXPECT_TRUE(c.ok);
  EXPECT_TRUE(std::isinf(c.bound));
}

TEST(StepSize, MidpointBoundary) {
  EXPECT_TRUE(check_step_size(implicit_midpoint(), 2.0, 1.0).ok);
  const StepSizeCheck c = check_step_size(implicit_midpoint(), 2.0, 1.5);
  EXPECT_FALSE(c.ok);
  EXPECT_DOUBLE_EQ(c.bound, 1.0);
  EXPECT_FALSE(c.message.empty());
}

} // namespace
} // namespace symoc
