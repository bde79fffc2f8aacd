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

#include <gtest/gtest.h>

#include "symoc/problems.hpp"
#include "symoc/regularized.hpp"
#include "test_support.hpp"

namespace symoc {
namespace {

using testing::vec;

TEST(DoubleWell, DynamicsExamples) {
  const OcProblem dw = make_double_well();
  EXPECT_EQ(dw.f(vec({-1, 0}), vec({0})), vec({0, 0}));
  EXPECT_EQ(dw.f(vec({0, 1}), vec({2})), vec({1, 1}));
  EXPECT_EQ(dw.state_dim, 2);
  EXPECT_EQ(dw.control_dim, 1);
}

TEST(DoubleWell, CostAndJacobians) {
  const OcProblem dw = make_double_well();
  const Vector x = vec({0.5, -2});
  EXPECT_DOUBLE_EQ(dw.h(x, vec({3})), 4.5);
  EXPECT_DOUBLE_EQ(dw.phi(x), 5.0 * (0.25 + 4.0));
  EXPECT_EQ(dw.phi_x(x), vec({-5, -20}));
  const Matrix fx = dw.f_x(x, vec({0}));
  EXPECT_DOUBLE_EQ(fx(1, 0), 1.0 - 3.0 * 0.25);
  EXPECT_DOUBLE_EQ(fx(1, 1), -1.0);
  EXPECT_EQ(dw.f_u(x, vec({0})), vec({0, 1}));
}

TEST(DoubleWell, DerivativesPassSelfCheck) {
  EXPECT_TRUE(check_derivatives(make_double_well(), 100, 5).passed);
  EXPECT_TRUE(check_derivatives(make_lq({1.0, 2.0, -0.3}), 100, 5).passed);
}

TEST(DoubleWell, Energy) {
  EXPECT_DOUBLE_EQ(double_well_energy(vec({-1, 0})), -0.25);
  EXPECT_DOUBLE_EQ(double_well_energy(vec({0, 0})), 0.0);
  EXPECT_DOUBLE_EQ(double_well_energy(vec({1, 2})), 2.0 - 0.25);
  EXPECT_TRUE(static_cast<bool>(make_double_well().energy));
}

TEST(DoubleWell, ParamsValidation) {
  DoubleWellParams p;
  p.alpha = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.target = vec({1, 0, 0});
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(DoubleWell, OptimalPathCrossesTheSaddleLevel) {
  const OcProblem dw = make_double_well();
  RegularizationConfig reg;
  const IterationResult r =
      run_iteration(dw, symplectic_euler(), vec({-1, 0}), ControlGrid(160, 1, 1), 6.0, reg);
  ASSERT_TRUE(r.report.converged());
  double highest = -1e300;
  for (const Vector &x : r.trajectory.x)
    highest = std::max(highest, double_well_energy(x));
  EXPECT_GT(highest, 0.0);
  EXPECT_GT(r.trajectory.x.back()[0], 0.0);
  EXPECT_NEAR(r.cost, 0.7712, 5e-4);
}

TEST(Lq, AnalyticValues) {
  const LqParams p{1.0, 1.0, 0.0};
  EXPECT_DOUBLE_EQ(lq_optimal_cost(p), 0.25);
  EXPECT_DOUBLE_EQ(lq_optimal_control(p, 0.3), -0.5);
  EXPECT_DOUBLE_EQ(lq_optimal_cost({0.0, 3.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(lq_optimal_control({0.0, 3.0, 0.0}, 1.0), 0.0);
}

// Integrate x' = a x + u* with RK4 on a fine grid and add up the cost.
double simulate_lq(const LqParams &p, int steps) {
  const double dt = p.horizon / steps;
  double x = p.xi, running = 0.0;
  auto u = [&](double t) { return lq_optimal_control(p, t); };
  auto rhs = [&](double t, double y) { return p.a * y + u(t); };
  for (int k = 0; k < steps; ++k) {
    const double t = k * dt;
    const double k1 = rhs(t, x);
    const double k2 = rhs(t + dt / 2, x + dt / 2 * k1);
    const double k3 = rhs(t + dt / 2, x + dt / 2 * k2);
    const double k4 = rhs(t + dt, x + dt * k3);
    x += dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    // Simpson for the running cost
    running += dt / 6 * (0.5 * u(t) * u(t) + 2 * u(t + dt / 2) * u(t + dt / 2) +
                         0.5 * u(t + dt) * u(t + dt));
  }
  return running + 0.5 * x * x;
}

TEST(Lq, DriftFormulasAgreeWithSimulation) {
  for (const LqParams &p : {LqParams{1.0, 1.0, 0.5}, LqParams{-2.0, 1.5, -0.8},
                            LqParams{0.5, 2.0, 0.0}})
    EXPECT_NEAR(simulate_lq(p, 4000), lq_optimal_cost(p), 1e-10);
}

TEST(Lq, CallbacksAndValidation) {
  const OcProblem lq = make_lq({1.0, 1.0, 0.5});
  EXPECT_DOUBLE_EQ(lq.f(vec({2}), vec({1}))[0], 2.0);
  EXPECT_DOUBLE_EQ(lq.h(vec({2}), vec({3})), 4.5);
  EXPECT_DOUBLE_EQ(lq.phi(vec({2})), 2.0);
  LqParams bad;
  bad.horizon = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

} // namespace
} // namespace symoc
