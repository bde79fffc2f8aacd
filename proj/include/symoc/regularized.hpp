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

#ifndef SYMOC_REGULARIZED_HPP
#define SYMOC_REGULARIZED_HPP

#include <string>
#include <vector>

#include "symoc/sweep.hpp"

namespace symoc {

struct MaximizerConfig {
  enum class Kind {
    closed_form,    ///< use the problem's closed form when it applies, else ascend
    gradient_ascent ///< always use projected gradient ascent
  };
  Kind kind = Kind::closed_form;
  int max_steps = 50;
  double grad_tol = 1e-10;
  double backtrack = 0.5;
  int max_backtracks = 40;
  double armijo = 1e-4;
  double initial_step = 0.0; ///< <= 0 selects 1 / (1 + rho)
};

struct RegularizationConfig {
  double rho = 100.0;
  double epsilon = 1e-8;
  int max_outer_iters = 20000;
  MaximizerConfig maximizer;
  int threads = 1; ///< workers for the per-step maximization

  void validate() const;
};

/// Discrete regularized Hamiltonian and its two penalty residual norms.
struct AugmentedTerms {
  double value = 0.0;       ///< H^tau - rho/2 (state_residual^2 + adjoint_residual^2)
  double hamiltonian = 0.0; ///< H^tau
  double state_residual = 0.0;   ///< |q - dH^tau/dlambda|
  double adjoint_residual = 0.0; ///< |p + dH^tau/dx|
};

AugmentedTerms augmented_terms(const OcProblem &problem, const ButcherPair &pair,
                               const Vector &x, const Vector &lambda_next,
                               const StageControls &u_n, const Vector &q, const Vector &p,
                               double rho, double tau, const StageSolveConfig &cfg = {});

/// H^tau(x, lambda, u) - rho/2 (|q - H^tau_lambda|^2 + |p + H^tau_x|^2), where q and
/// p are the state and adjoint forward differences of the step.
double augmented_hamiltonian(const OcProblem &problem, const ButcherPair &pair,
                             const Vector &x, const Vector &lambda_next,
                             const StageControls &u_n, const Vector &q, const Vector &p,
                             double rho, double tau, const StageSolveConfig &cfg = {});

/// Gradient of augmented_hamiltonian in the stacked stage controls. The
/// H^tau part is exact; the Jacobians of H^tau_lambda and H^tau_x that
/// multiply the penalty residuals are central differences.
Vector augmented_hamiltonian_grad_u(const OcProblem &problem, const ButcherPair &pair,
                                    const Vector &x, const Vector &lambda_next,
                                    const StageControls &u_n, const Vector &q,
                                    const Vector &p, double rho, double tau,
                                    const StageSolveConfig &cfg = {});

struct StepMaximum {
  Vector controls;
  AugmentedTerms initial; ///< terms at u_init
  double value = 0.0;     ///< augmented Hamiltonian at `controls`
  int steps = 0;
  bool used_closed_form = false;
  bool stalled = false; ///< line search could not improve on u_init
};

/// Maximizes the augmented Hamiltonian of one step over admissible stage
/// controls, starting from u_init. Never returns a worse value than u_init
/// (up to rounding in the evaluation).
StepMaximum maximize_step_control(const OcProblem &problem, const ButcherPair &pair,
                                  const Vector &x, const Vector &lambda_next,
                                  const Vector &u_init, const Vector &q, const Vector &p,
                                  double rho, double tau, const StageSolveConfig &cfg,
                                  const MaximizerConfig &maximizer = {});

/// Problem, tableau, initial state and horizon of a discrete run.
struct SweepContext {
  const OcProblem &problem;
  const ButcherPair &pair;
  Vector xi;
  double horizon;
  StageSolveConfig stage;
};

/// A control together with its consistent trajectories and cost.
struct SweepState {
  ControlGrid u;
  TrajectoryPair traj;
  double cost = 0.0;
};

/// Forward sweep, backward sweep and discrete cost for u.
SweepState evaluate_control(const SweepContext &ctx, ControlGrid u);

/// One application of the control map u -> F(u): per-step maximization with
/// x, lambda (and hence q, p) frozen from `state`.
struct ControlUpdate {
  ControlGrid next;
  double hbar_gain = 0.0;   ///< tau sum_n (H~(v_n) - H~(u_n))
  double max_penalty = 0.0; ///< max_n penalty residual at the pre-update control
  int stalled_steps = 0;
};

ControlUpdate regularized_update(const SweepContext &ctx, const SweepState &state,
                                 const RegularizationConfig &reg);

struct IterationRecord {
  int iter = 0;
  double cost = 0.0;        ///< J^tau of the control after this iteration
  double update_norm = 0.0; ///< sum_n |F(u)_n - u_n|
  double hbar_gain = 0.0;
  double max_penalty = 0.0;
};

enum class Termination { tolerance, iteration_budget };

std::string to_string(Termination reason);

struct SweepReport {
  double initial_cost = 0.0;
  std::vector<IterationRecord> records;
  Termination termination = Termination::iteration_budget;
  std::vector<std::string> warnings;

  int iterations() const { return static_cast<int>(records.size()); }
  bool converged() const { return termination == Termination::tolerance; }
  double final_cost() const { return records.empty() ? initial_cost : records.back().cost; }
};

struct IterationResult {
  ControlGrid control;
  TrajectoryPair trajectory;
  double cost = 0.0;
  SweepReport report;
};

/// Regularized forward-backward sweep: repeat {forward sweep, backward sweep,
/// per-step maximization} until the control update drops below epsilon or
/// the iteration budget runs out.
IterationResult run_iteration(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &xi, const ControlGrid &u0, double horizon,
                              const RegularizationConfig &reg,
                              const StageSolveConfig &cfg = {});

} // namespace symoc

#endif // SYMOC_REGULARIZED_HPP
