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

#ifndef SYMOC_SWEEP_HPP
#define SYMOC_SWEEP_HPP

#include <vector>

#include "symoc/problem.hpp"
#include "symoc/tableau.hpp"

namespace symoc {

using StageControls = Eigen::Ref<const Vector>;

enum class StageMethod { fixed_point, newton };

/// Settings for the implicit stage equations. The residual test is
/// max-norm <= residual_tol * (1 + |x_n|_inf).
struct StageSolveConfig {
  int max_inner_iters = 100;
  double residual_tol = 1e-12;
  double damping = 1.0; ///< fixed-point relaxation, in (0, 1]
  StageMethod method = StageMethod::fixed_point;

  void validate() const;
};

/// Stage states X_i of one step and the stage slopes f(X_i, U_i).
struct StageStates {
  std::vector<Vector> X;
  std::vector<Vector> F;
};

/// Stage adjoints Lambda_i and g(X_i, Lambda_i, U_i) of one step.
struct StageAdjoints {
  std::vector<Vector> Lambda;
  std::vector<Vector> G;
};

/// Solves X_i = x + tau sum_j a_ij f(X_j, U_j). `step` only labels errors.
StageStates solve_state_stages(const OcProblem &problem, const ButcherPair &pair,
                               const Vector &x, const StageControls &u_n, double tau,
                               const StageSolveConfig &cfg, int step = -1);

/// Solves Lambda_i = lambda_next - tau sum_j (b_j a_ji / b_i) G_j with
/// G_j = -f_x(X_j, U_j)^T Lambda_j + h_x(X_j, U_j), which is the a~-coupled
/// adjoint stage system with lambda_n eliminated.
StageAdjoints solve_adjoint_stages(const OcProblem &problem, const ButcherPair &pair,
                                   const std::vector<Vector> &X, const StageControls &u_n,
                                   const Vector &lambda_next, double tau,
                                   const StageSolveConfig &cfg, int step = -1);

/// State part of the discrete optimality system for control grid u on [0, T].
TrajectoryPair forward_sweep(const OcProblem &problem, const ButcherPair &pair,
                             const Vector &xi, const ControlGrid &u, double horizon,
                             const StageSolveConfig &cfg = {});

/// Adds the adjoint part (lambda_N = -Phi_x(x_N), swept backwards) to a
/// trajectory produced by forward_sweep with the same control.
TrajectoryPair backward_sweep(const OcProblem &problem, const ButcherPair &pair,
                              const TrajectoryPair &state, const ControlGrid &u,
                              const StageSolveConfig &cfg = {});

/// Reduced one-step quantities f^tau, h^tau, H^tau and dH^tau/dx at (x, lambda_next, u_n).
struct HamiltonianTerms {
  double value = 0.0; ///< H^tau = lambda . f^tau - h^tau
  Vector f_tau;       ///< dH^tau/dlambda
  double h_tau = 0.0;
  Vector grad_x; ///< dH^tau/dx (empty unless requested)
};

HamiltonianTerms hamiltonian_terms(const OcProblem &problem, const ButcherPair &pair,
                                   const Vector &x, const Vector &lambda_next,
                                   const StageControls &u_n, double tau,
                                   const StageSolveConfig &cfg, bool with_grad_x = true);

/// Stacked stage sensitivities Psi_i = dX_i/dx (s*d x d), from
/// Psi_i = I + tau sum_j a_ij f_x(X_j, U_j) Psi_j.
Matrix stage_sensitivity(const OcProblem &problem, const ButcherPair &pair,
                         const StageStates &stages, const StageControls &u_n, double tau);

double hamiltonian_tau(const OcProblem &problem, const ButcherPair &pair, const Vector &x,
                       const Vector &lambda_next, const StageControls &u_n, double tau,
                       const StageSolveConfig &cfg = {});

Vector hamiltonian_tau_grad_x(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &x, const Vector &lambda_next,
                              const StageControls &u_n, double tau,
                              const StageSolveConfig &cfg = {});

/// Stacked blocks b_i (f_u(X_i, U_i)^T Lambda_i - h_u(X_i, U_i)), size s*m.
Vector hamiltonian_tau_grad_u(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &x, const Vector &lambda_next,
                              const StageControls &u_n, double tau,
                              const StageSolveConfig &cfg = {});

/// dJ^tau/dU_{i,n} = -tau b_i (f_u^T Lambda_i - h_u) read off a trajectory with
/// its adjoint part, in ControlGrid layout.
Vector discrete_cost_gradient(const OcProblem &problem, const ButcherPair &pair,
                              const TrajectoryPair &traj, const ControlGrid &u);

} // namespace symoc

#endif // SYMOC_SWEEP_HPP
