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

#include "symoc/regularized.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace symoc {

namespace {

Vector project_step(const OcProblem &problem, Vector u_n) {
  if (!problem.control_project)
    return u_n;
  const int m = problem.control_dim;
  for (Eigen::Index i = 0; i < u_n.size() / m; ++i)
    u_n.segment(i * m, m) = problem.project(u_n.segment(i * m, m));
  return u_n;
}

// Slack for comparing two evaluations of the augmented Hamiltonian.
double rounding_slack(double value) {
  return 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(value));
}

// df^tau/du_n (d x s*m). The stage sensitivities dX/dU solve
// (I - tau A (x) f_x) dX = tau (A (x) I) blockdiag(f_u).
Matrix f_tau_jacobian_u(const OcProblem &problem, const ButcherPair &pair, const Vector &x,
                        const StageControls &u_n, double tau, const StageSolveConfig &cfg) {
  const int s = pair.s;
  const int d = problem.state_dim;
  const int m = problem.control_dim;
  const StageStates st = solve_state_stages(problem, pair, x, u_n, tau, cfg);
  std::vector<Matrix> fx(s), fu(s);
  for (int j = 0; j < s; ++j) {
    const Vector Uj = u_n.segment(j * m, m);
    fx[j] = problem.f_x(st.X[j], Uj);
    fu[j] = problem.f_u(st.X[j], Uj);
  }
  Matrix system = Matrix::Identity(s * d, s * d);
  Matrix rhs = Matrix::Zero(s * d, s * m);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      system.block(i * d, j * d, d, d) -= tau * pair.A(i, j) * fx[j];
      rhs.block(i * d, j * m, d, m) = tau * pair.A(i, j) * fu[j];
    }
  const Matrix dX = system.partialPivLu().solve(rhs);
  Matrix jac = Matrix::Zero(d, s * m);
  for (int i = 0; i < s; ++i) {
    jac += pair.b[i] * fx[i] * dX.middleRows(i * d, d);
    jac.middleCols(i * m, m) += pair.b[i] * fu[i];
  }
  return jac;
}

} // namespace

void RegularizationConfig::validate() const {
  if (!(rho >= 0.0))
    throw ConfigError("regularization: rho must be >= 0");
  if (!(epsilon > 0.0))
    throw ConfigError("regularization: epsilon must be positive");
  if (max_outer_iters < 1)
    throw ConfigError("regularization: max_outer_iters must be >= 1");
  if (maximizer.max_steps < 1 || maximizer.max_backtracks < 1)
    throw ConfigError("maximizer: max_steps and max_backtracks must be >= 1");
  if (!(maximizer.backtrack > 0.0 && maximizer.backtrack < 1.0))
    throw ConfigError("maximizer: backtrack factor must lie in (0, 1)");
  if (!(maximizer.grad_tol > 0.0))
    throw ConfigError("maximizer: grad_tol must be positive");
  if (threads < 1)
    throw ConfigError("regularization: threads must be >= 1");
}

std::string to_string(Termination reason) {
  switch (reason) {
  case Termination::tolerance:
    return "tolerance";
  case Termination::iteration_budget:
    return "iteration budget";
  }
  return "unknown";
}

AugmentedTerms augmented_terms(const OcProblem &problem, const ButcherPair &pair,
                               const Vector &x, const Vector &lambda_next,
                               const StageControls &u_n, const Vector &q, const Vector &p,
                               double rho, double tau, const StageSolveConfig &cfg) {
  if (q.size() != problem.state_dim || p.size() != problem.state_dim)
    throw DimensionError("augmented Hamiltonian: q and p must have the state dimension");
  const HamiltonianTerms h = hamiltonian_terms(problem, pair, x, lambda_next, u_n, tau, cfg);
  AugmentedTerms t;
  t.hamiltonian = h.value;
  t.state_residual = (q - h.f_tau).norm();
  t.adjoint_residual = (p + h.grad_x).norm();
  t.value = h.value - 0.5 * rho *
                          (t.state_residual * t.state_residual +
                           t.adjoint_residual * t.adjoint_residual);
  return t;
}

double augmented_hamiltonian(const OcProblem &problem, const ButcherPair &pair,
                             const Vector &x, const Vector &lambda_next,
                             const StageControls &u_n, const Vector &q, const Vector &p,
                             double rho, double tau, const StageSolveConfig &cfg) {
  return augmented_terms(problem, pair, x, lambda_next, u_n, q, p, rho, tau, cfg).value;
}

Vector augmented_hamiltonian_grad_u(const OcProblem &problem, const ButcherPair &pair,
                                    const Vector &x, const Vector &lambda_next,
                                    const StageControls &u_n, const Vector &q,
                                    const Vector &p, double rho, double tau,
                                    const StageSolveConfig &cfg) {
  Vector grad = hamiltonian_tau_grad_u(problem, pair, x, lambda_next, u_n, tau, cfg);
  if (rho == 0.0)
    return grad;

  const HamiltonianTerms base = hamiltonian_terms(problem, pair, x, lambda_next, u_n, tau, cfg);
  const Vector state_res = q - base.f_tau;
  const Vector adjoint_res = p + base.grad_x;
  grad += rho * f_tau_jacobian_u(problem, pair, x, u_n, tau, cfg).transpose() * state_res;

  // dH^tau/dx carries second derivatives of f and h; differenced in u.
  const double step = 1e-6 * (1.0 + u_n.norm());
  Vector probe = u_n;
  for (Eigen::Index k = 0; k < probe.size(); ++k) {
    probe[k] = u_n[k] + step;
    const Vector plus = hamiltonian_tau_grad_x(problem, pair, x, lambda_next, probe, tau, cfg);
    probe[k] = u_n[k] - step;
    const Vector minus = hamiltonian_tau_grad_x(problem, pair, x, lambda_next, probe, tau, cfg);
    probe[k] = u_n[k];
    grad[k] -= rho * ((plus - minus) / (2.0 * step)).dot(adjoint_res);
  }
  return grad;
}

StepMaximum maximize_step_control(const OcProblem &problem, const ButcherPair &pair,
                                  const Vector &x, const Vector &lambda_next,
                                  const Vector &u_init, const Vector &q, const Vector &p,
                                  double rho, double tau, const StageSolveConfig &cfg,
                                  const MaximizerConfig &maximizer) {
  auto eval = [&](const Vector &u) {
    return augmented_terms(problem, pair, x, lambda_next, u, q, p, rho, tau, cfg);
  };

  StepMaximum result;
  result.initial = eval(u_init);
  result.controls = u_init;
  result.value = result.initial.value;

  if (maximizer.kind == MaximizerConfig::Kind::closed_form && problem.closed_form_argmax) {
    const ArgmaxQuery query{pair.A, pair.b, x, lambda_next, u_init, q, p, rho, tau};
    if (const auto closed = problem.closed_form_argmax(query)) {
      result.used_closed_form = true;
      const Vector candidate = project_step(problem, *closed);
      const double value = eval(candidate).value;
      if (value >= result.value - rounding_slack(result.value)) {
        result.controls = candidate;
        result.value = value;
      } else {
        result.stalled = true;
      }
      return result;
    }
  }

  const double initial_step =
      maximizer.initial_step > 0.0 ? maximizer.initial_step : 1.0 / (1.0 + rho);
  Vector u = result.controls;
  double value = result.value;
  for (int step = 0; step < maximizer.max_steps; ++step) {
    const Vector grad =
        augmented_hamiltonian_grad_u(problem, pair, x, lambda_next, u, q, p, rho, tau, cfg);
    if ((project_step(problem, u + grad) - u).norm() <= maximizer.grad_tol)
      break;

    double alpha = initial_step;
    bool accepted = false;
    Vector candidate;
    double candidate_value = value;
    for (int bt = 0; bt < maximizer.max_backtracks; ++bt, alpha *= maximizer.backtrack) {
      candidate = project_step(problem, u + alpha * grad);
      candidate_value = eval(candidate).value;
      if (candidate_value > value &&
          candidate_value >= value + maximizer.armijo * grad.dot(candidate - u)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      result.stalled = (step == 0);
      break;
    }
    ++result.steps;
    u = std::move(candidate);
    value = candidate_value;
  }
  result.controls = std::move(u);
  result.value = value;
  return result;
}

SweepState evaluate_control(const SweepContext &ctx, ControlGrid u) {
  SweepState state;
  TrajectoryPair fwd = forward_sweep(ctx.problem, ctx.pair, ctx.xi, u, ctx.horizon, ctx.stage);
  state.traj = backward_sweep(ctx.problem, ctx.pair, fwd, u, ctx.stage);
  state.cost = discrete_cost(ctx.problem, state.traj, u, ctx.pair.b);
  state.u = std::move(u);
  return state;
}

ControlUpdate regularized_update(const SweepContext &ctx, const SweepState &state,
                                 const RegularizationConfig &reg) {
  const TrajectoryPair &traj = state.traj;
  const int N = traj.steps;
  const double tau = traj.tau;
  std::vector<StepMaximum> steps(N);

  auto solve_range = [&](int begin, int end) {
    for (int n = begin; n < end; ++n) {
      const Vector q = (traj.x[n + 1] - traj.x[n]) / tau;
      const Vector p = (traj.lambda[n + 1] - traj.lambda[n]) / tau;
      steps[n] = maximize_step_control(ctx.problem, ctx.pair, traj.x[n], traj.lambda[n + 1],
                                       state.u.step(n), q, p, reg.rho, tau, ctx.stage,
                                       reg.maximizer);
    }
  };

  const int workers = std::min(reg.threads, N);
  if (workers <= 1) {
    solve_range(0, N);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    const int chunk = (N + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const int begin = w * chunk;
      const int end = std::min(N, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          solve_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto &t : pool)
      t.join();
    for (auto &e : errors)
      if (e)
        std::rethrow_exception(e);
  }

  ControlUpdate update;
  update.next = state.u;
  for (int n = 0; n < N; ++n) {
    update.next.step(n) = steps[n].controls;
    update.hbar_gain += tau * (steps[n].value - steps[n].initial.value);
    update.max_penalty = std::max({update.max_penalty, steps[n].initial.state_residual,
                                   steps[n].initial.adjoint_residual});
    if (steps[n].stalled)
      ++update.stalled_steps;
  }
  return update;
}

IterationResult run_iteration(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &xi, const ControlGrid &u0, double horizon,
                              const RegularizationConfig &reg, const StageSolveConfig &cfg) {
  problem.validate();
  reg.validate();
  cfg.validate();
  if (u0.stages() != pair.s || u0.control_dim() != problem.control_dim)
    throw DimensionError("initial control does not match tableau stages / control dimension");

  const SweepContext ctx{problem, pair, xi, horizon, cfg};
  SweepState state = evaluate_control(ctx, project_controls(problem, u0));

  IterationResult result;
  result.report.initial_cost = state.cost;
  result.report.warnings = state.traj.warnings;
  for (int k = 1; k <= reg.max_outer_iters; ++k) {
    ControlUpdate update = regularized_update(ctx, state, reg);
    const double norm = control_update_norm(update.next, state.u);
    state = evaluate_control(ctx, std::move(update.next));
    result.report.records.push_back(
        {k, state.cost, norm, update.hbar_gain, update.max_penalty});
    if (norm < reg.epsilon) {
      result.report.termination = Termination::tolerance;
      break;
    }
  }
  result.control = std::move(state.u);
  result.trajectory = std::move(state.traj);
  result.cost = state.cost;
  return result;
}

} // namespace symoc
