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

#include <gtest/gtest.h>

#include "symoc/problems.hpp"
#include "symoc/sweep.hpp"
#include "test_support.hpp"

namespace symoc {
namespace {

using testing::vec;

std::vector<ButcherPair> both_pairs() { return {symplectic_euler(), implicit_midpoint()}; }

ControlGrid random_controls(std::mt19937_64 &rng, int N, int s, int m, double scale) {
  std::normal_distribution<double> normal;
  ControlGrid u(N, s, m);
  for (Eigen::Index k = 0; k < u.values().size(); ++k)
    u.values()[k] = scale * normal(rng);
  return u;
}

double cost_from(const OcProblem &p, const ButcherPair &pair, const Vector &xi,
                 const ControlGrid &u, double T, const StageSolveConfig &cfg) {
  return discrete_cost(p, forward_sweep(p, pair, xi, u, T, cfg), u, pair.b);
}

StageSolveConfig tight() {
  StageSolveConfig cfg;
  cfg.method = StageMethod::newton;
  cfg.residual_tol = 1e-14;
  return cfg;
}

TEST(ForwardSweep, ZeroDynamicsKeepsState) {
  const OcProblem p = testing::frozen_problem(2, 1, 0.0);
  for (const ButcherPair &pair : both_pairs()) {
    const ControlGrid u(5, pair.s, 1, Vector::Constant(5, 2.0));
    const TrajectoryPair t = forward_sweep(p, pair, vec({1, -2}), u, 1.0);
    for (const Vector &x : t.x)
      EXPECT_EQ(x, vec({1, -2}));
  }
}

TEST(ForwardSweep, ConstantRateIsExact) {
  const OcProblem p = testing::integrator_problem();
  const ControlGrid u(8, 1, 1, Vector::Constant(8, 0.25));
  const TrajectoryPair t = forward_sweep(p, symplectic_euler(), vec({1}), u, 2.0);
  for (int n = 0; n <= 8; ++n)
    EXPECT_NEAR(t.x[n][0], 1.0 + n * 0.25 * 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(t.tau * t.steps, t.horizon);
}

TEST(ForwardSweep, DoubleWellEquilibrium) {
  const OcProblem dw = make_double_well();
  for (const ButcherPair &pair : both_pairs()) {
    const TrajectoryPair t = forward_sweep(dw, pair, vec({-1, 0}), ControlGrid(20, 1, 1), 6.0);
    for (const Vector &x : t.x)
      EXPECT_LE((x - vec({-1, 0})).norm(), 1e-15);
  }
}

TEST(ForwardSweep, ImplicitStagesSatisfyTheirEquation) {
  const OcProblem dw = make_double_well();
  const ButcherPair pair = implicit_midpoint();
  std::mt19937_64 rng(5);
  const ControlGrid u = random_controls(rng, 12, 1, 1, 1.0);
  const TrajectoryPair t = forward_sweep(dw, pair, vec({-1, 0}), u, 6.0);
  const double tau = t.tau;
  for (int n = 0; n < 12; ++n) {
    const Vector &X = t.stage_state(n, 0);
    const Vector F = dw.f(X, u.stage(n, 0));
    EXPECT_LE((X - t.x[n] - tau * 0.5 * F).lpNorm<Eigen::Infinity>(), 1e-11);
    EXPECT_LE((t.x[n + 1] - t.x[n] - tau * F).lpNorm<Eigen::Infinity>(), 1e-14);
  }
}

TEST(ForwardSweep, NewtonAndFixedPointAgree) {
  const OcProblem dw = make_double_well();
  std::mt19937_64 rng(8);
  const ControlGrid u = random_controls(rng, 20, 1, 1, 1.0);
  const TrajectoryPair a = forward_sweep(dw, implicit_midpoint(), vec({-1, 0}), u, 6.0);
  const TrajectoryPair b = forward_sweep(dw, implicit_midpoint(), vec({-1, 0}), u, 6.0, tight());
  EXPECT_LE((a.x.back() - b.x.back()).norm(), 1e-10);
}

TEST(ForwardSweep, StageDivergenceNamesTheStep) {
  const OcProblem dw = make_double_well();
  StageSolveConfig cfg;
  cfg.max_inner_iters = 1;
  const ControlGrid u(4, 1, 1, Vector::Constant(4, 1.0));
  try {
    forward_sweep(dw, implicit_midpoint(), vec({-1, 0}), u, 6.0, cfg);
    FAIL();
  } catch (const StageDivergence &e) {
    EXPECT_EQ(e.step(), 0);
  }
}

TEST(ForwardSweep, OversizedStepIsAWarning) {
  const OcProblem dw = make_double_well();
  const TrajectoryPair t =
      forward_sweep(dw, implicit_midpoint(), vec({-1, 0}), ControlGrid(2, 1, 1), 1.2);
  EXPECT_FALSE(t.warnings.empty());
  const TrajectoryPair ok =
      forward_sweep(dw, implicit_midpoint(), vec({-1, 0}), ControlGrid(20, 1, 1), 6.0);
  EXPECT_TRUE(ok.warnings.empty());
}

TEST(BackwardSweep, TerminalAdjointOfDoubleWell) {
  const OcProblem dw = make_double_well();
  const ButcherPair pair = symplectic_euler();
  const ControlGrid u(10, 1, 1);
  const TrajectoryPair t =
      backward_sweep(dw, pair, forward_sweep(dw, pair, vec({-1, 0}), u, 6.0), u);
  EXPECT_EQ(t.lambda.back(), vec({20, 0}));
  EXPECT_TRUE(t.has_adjoint);
}

TEST(BackwardSweep, FreeProblemHasConstantAdjoint) {
  const OcProblem p = testing::frozen_problem(2, 1, 0.0);
  for (const ButcherPair &pair : both_pairs()) {
    const ControlGrid u(6, pair.s, 1, Vector::Constant(6, 1.0));
    const TrajectoryPair t =
        backward_sweep(p, pair, forward_sweep(p, pair, vec({0.5, 2}), u, 1.0), u);
    for (const Vector &l : t.lambda)
      EXPECT_EQ(l, t.lambda.back());
  }
}

TEST(BackwardSweep, InitialAdjointIsMinusCostGradient) {
  std::mt19937_64 rng(21);
  const OcProblem problems[] = {make_double_well(), make_lq({0.7, 2.0, -0.5})};
  const Vector starts[] = {vec({-1, 0}), vec({0.7})};
  for (int k = 0; k < 2; ++k) {
    const OcProblem &p = problems[k];
    for (const ButcherPair &pair : both_pairs()) {
      const ControlGrid u = random_controls(rng, 8, pair.s, 1, 0.5);
      const double T = k == 0 ? 6.0 : 2.0;
      const TrajectoryPair t =
          backward_sweep(p, pair, forward_sweep(p, pair, starts[k], u, T, tight()), u, tight());
      const Vector fd = testing::central_gradient(
          [&](const Vector &xi) { return cost_from(p, pair, xi, u, T, tight()); }, starts[k]);
      EXPECT_LE(testing::rel_diff(t.lambda.front(), -fd), 1e-6) << p.name << " " << pair.name;
    }
  }
}

TEST(BackwardSweep, StageAdjointsFromEitherForm) {
  // Lambda_i = lambda_n + tau sum_j a~_ij G_j must hold alongside the lambda_{n+1} form.
  const OcProblem dw = make_double_well();
  std::mt19937_64 rng(4);
  Matrix A(2, 2);
  A << 0.25, -0.1, 0.4, 0.2;
  const ButcherPair pair = make_adjoint_pair(A, vec({0.4, 0.6}));
  const ControlGrid u = random_controls(rng, 6, 2, 1, 0.5);
  const TrajectoryPair t =
      backward_sweep(dw, pair, forward_sweep(dw, pair, vec({-1, 0}), u, 3.0, tight()), u, tight());
  for (int n = 0; n < 6; ++n)
    for (int i = 0; i < 2; ++i) {
      Vector rhs = t.lambda[n];
      for (int j = 0; j < 2; ++j)
        rhs += t.tau * pair.A_tilde(i, j) * t.stage_adjoint_rate(n, j);
      EXPECT_LE((t.stage_adjoint(n, i) - rhs).lpNorm<Eigen::Infinity>(), 1e-12);
    }
}

TEST(Hamiltonian, ZeroProblemGivesZero) {
  OcProblem p = testing::frozen_problem(2, 1, 0.0);
  for (const ButcherPair &pair : both_pairs())
    EXPECT_EQ(hamiltonian_tau(p, pair, vec({1, 2}), vec({3, 4}), vec({5}), 0.1), 0.0);
}

TEST(Hamiltonian, EulerIsThePlainHamiltonian) {
  const OcProblem dw = make_double_well();
  const Vector x = vec({0.3, -0.4}), l = vec({1.5, -2.0}), u = vec({0.7});
  EXPECT_DOUBLE_EQ(hamiltonian_tau(dw, symplectic_euler(), x, l, u, 0.2),
                   l.dot(dw.f(x, u)) - dw.h(x, u));
  const Vector gx = hamiltonian_tau_grad_x(dw, symplectic_euler(), x, l, u, 0.2);
  EXPECT_LE((gx - (dw.f_x(x, u).transpose() * l - dw.h_x(x, u))).norm(), 1e-15);
}

TEST(Hamiltonian, LambdaDerivativeReproducesStep) {
  const OcProblem dw = make_double_well();
  std::mt19937_64 rng(9);
  for (const ButcherPair &pair : both_pairs()) {
    const ControlGrid u = random_controls(rng, 10, 1, 1, 1.0);
    const TrajectoryPair t = forward_sweep(dw, pair, vec({-1, 0}), u, 6.0, tight());
    for (int n = 0; n < 10; ++n) {
      const HamiltonianTerms h =
          hamiltonian_terms(dw, pair, t.x[n], vec({0, 0}), u.step(n), t.tau, tight());
      EXPECT_LE((t.tau * h.f_tau - (t.x[n + 1] - t.x[n])).norm(), 1e-13);
    }
  }
}

TEST(Hamiltonian, GradXAgreesWithFiniteDifferencesAndAdjointStep) {
  const OcProblem dw = make_double_well();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> unif(-1.5, 1.5);
  for (const ButcherPair &pair : both_pairs()) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vector x = vec({unif(rng), unif(rng)}), l = vec({unif(rng), unif(rng)});
      const Vector u = vec({unif(rng)});
      const Vector g = hamiltonian_tau_grad_x(dw, pair, x, l, u, 0.2, tight());
      const Vector fd = testing::central_gradient(
          [&](const Vector &y) { return hamiltonian_tau(dw, pair, y, l, u, 0.2, tight()); }, x);
      EXPECT_LE(testing::rel_diff(g, fd), 1e-6);
    }
    const ControlGrid u = random_controls(rng, 10, 1, 1, 1.0);
    const TrajectoryPair t = backward_sweep(
        dw, pair, forward_sweep(dw, pair, vec({-1, 0}), u, 6.0, tight()), u, tight());
    for (int n = 0; n < 10; ++n) {
      const Vector g =
          hamiltonian_tau_grad_x(dw, pair, t.x[n], t.lambda[n + 1], u.step(n), t.tau, tight());
      EXPECT_LE((g + (t.lambda[n + 1] - t.lambda[n]) / t.tau).lpNorm<Eigen::Infinity>(), 1e-10);
    }
  }
}

TEST(Hamiltonian, StageControlGradientMatchesCost) {
  std::mt19937_64 rng(17);
  const OcProblem dw = make_double_well();
  Matrix A(2, 2);
  A << 0.0, 0.0, 0.5, 0.5;
  const ButcherPair lobatto = make_adjoint_pair(A, vec({0.5, 0.5}));
  for (const ButcherPair &pair : {symplectic_euler(), implicit_midpoint(), lobatto}) {
    const int N = 8;
    const double T = 6.0;
    const ControlGrid u = random_controls(rng, N, pair.s, 1, 0.5);
    const Vector xi = vec({-1, 0});
    const TrajectoryPair t =
        backward_sweep(dw, pair, forward_sweep(dw, pair, xi, u, T, tight()), u, tight());
    const Vector grad = discrete_cost_gradient(dw, pair, t, u);
    const Vector fd = testing::central_gradient(
        [&](const Vector &v) {
          return cost_from(dw, pair, xi, ControlGrid(N, pair.s, 1, v), T, tight());
        },
        u.values());
    EXPECT_LE(testing::rel_diff(grad, fd), 1e-6) << pair.name;

    // block by block against -tau * dH/dU
    for (int n = 0; n < N; ++n) {
      const Vector hu =
          hamiltonian_tau_grad_u(dw, pair, t.x[n], t.lambda[n + 1], u.step(n), t.tau, tight());
      EXPECT_LE((-t.tau * hu - fd.segment(n * pair.s, pair.s)).lpNorm<Eigen::Infinity>(),
                1e-6 * fd.lpNorm<Eigen::Infinity>());
      for (int i = 0; i < pair.s; ++i) {
        const Vector &Li = t.stage_adjoint(n, i);
        const Vector &Xi = t.stage_state(n, i);
        const Vector Ui = u.stage(n, i);
        const Vector block =
            pair.b[i] * (dw.f_u(Xi, Ui).transpose() * Li - dw.h_u(Xi, Ui));
        EXPECT_LE((hu.segment(i, 1) - block).norm(), 1e-10);
      }
    }
  }
}

TEST(Hamiltonian, ControlFreeProblemHasZeroGradU) {
  OcProblem p = testing::frozen_problem(2, 1, 1.0);
  p.dynamics = [](const Vector &x, const Vector &) { return Vector(-x); };
  for (const ButcherPair &pair : both_pairs()) {
    const Vector g = hamiltonian_tau_grad_u(p, pair, vec({1, 2}), vec({3, 4}), vec({5}), 0.1);
    EXPECT_EQ(g.norm(), 0.0);
  }
}

} // namespace
} // namespace symoc
