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

#include "symoc/sweep.hpp"

#include <cmath>
#include <sstream>

namespace symoc {

namespace {

Vector stage_control(const StageControls &u_n, int i, int m) { return u_n.segment(i * m, m); }

void check_step_controls(const OcProblem &problem, const ButcherPair &pair,
                         const StageControls &u_n) {
  if (u_n.size() != pair.s * problem.control_dim)
    throw DimensionError("stage controls have size " + std::to_string(u_n.size()) +
                         ", expected s*m = " + std::to_string(pair.s * problem.control_dim));
}

double inf_norm(const std::vector<Vector> &a, const std::vector<Vector> &b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, (a[i] - b[i]).lpNorm<Eigen::Infinity>());
  return worst;
}

std::string describe_failure(double residual, double tol, int iters) {
  std::ostringstream msg;
  msg << "residual " << residual << " above " << tol << " after " << iters << " iterations";
  return msg.str();
}

// X_i = x + tau sum_j a_ij F_j for the current slopes.
std::vector<Vector> stage_map(const ButcherPair &pair, const Vector &x,
                              const std::vector<Vector> &F, double tau) {
  std::vector<Vector> out(pair.s, x);
  for (int i = 0; i < pair.s; ++i)
    for (int j = 0; j < pair.s; ++j)
      if (pair.A(i, j) != 0.0)
        out[i] += tau * pair.A(i, j) * F[j];
  return out;
}

} // namespace

void StageSolveConfig::validate() const {
  if (max_inner_iters < 1)
    throw ConfigError("stage solver: max_inner_iters must be >= 1");
  if (!(residual_tol > 0.0))
    throw ConfigError("stage solver: residual_tol must be positive");
  if (!(damping > 0.0 && damping <= 1.0))
    throw ConfigError("stage solver: damping must lie in (0, 1]");
}

StageStates solve_state_stages(const OcProblem &problem, const ButcherPair &pair,
                               const Vector &x, const StageControls &u_n, double tau,
                               const StageSolveConfig &cfg, int step) {
  check_step_controls(problem, pair, u_n);
  const int s = pair.s;
  const int m = problem.control_dim;
  const int d = problem.state_dim;
  std::vector<Vector> U(s);
  for (int i = 0; i < s; ++i)
    U[i] = stage_control(u_n, i, m);

  StageStates st;
  st.X.assign(s, x);
  st.F.resize(s);

  if (pair.explicit_flag) {
    for (int i = 0; i < s; ++i) {
      for (int j = 0; j < i; ++j)
        if (pair.A(i, j) != 0.0)
          st.X[i] += tau * pair.A(i, j) * st.F[j];
      st.F[i] = problem.f(st.X[i], U[i]);
    }
    return st;
  }

  const double tol = cfg.residual_tol * (1.0 + x.lpNorm<Eigen::Infinity>());
  double residual = 0.0;
  for (int iter = 0; iter < cfg.max_inner_iters; ++iter) {
    for (int i = 0; i < s; ++i)
      st.F[i] = problem.f(st.X[i], U[i]);
    std::vector<Vector> mapped = stage_map(pair, x, st.F, tau);
    residual = inf_norm(mapped, st.X);
    if (!std::isfinite(residual))
      break;
    if (residual <= tol)
      return st;

    if (cfg.method == StageMethod::newton) {
      Matrix jac = Matrix::Identity(s * d, s * d);
      Vector rhs(s * d);
      for (int j = 0; j < s; ++j) {
        const Matrix fx = problem.f_x(st.X[j], U[j]);
        for (int i = 0; i < s; ++i)
          if (pair.A(i, j) != 0.0)
            jac.block(i * d, j * d, d, d) -= tau * pair.A(i, j) * fx;
      }
      for (int i = 0; i < s; ++i)
        rhs.segment(i * d, d) = mapped[i] - st.X[i];
      const Vector delta = jac.partialPivLu().solve(rhs);
      for (int i = 0; i < s; ++i)
        st.X[i] += delta.segment(i * d, d);
    } else {
      for (int i = 0; i < s; ++i)
        st.X[i] = (1.0 - cfg.damping) * st.X[i] + cfg.damping * mapped[i];
    }
  }
  throw StageDivergence(step, "state stages, " +
                                  describe_failure(residual, tol, cfg.max_inner_iters));
}

StageAdjoints solve_adjoint_stages(const OcProblem &problem, const ButcherPair &pair,
                                   const std::vector<Vector> &X, const StageControls &u_n,
                                   const Vector &lambda_next, double tau,
                                   const StageSolveConfig &cfg, int step) {
  check_step_controls(problem, pair, u_n);
  const int s = pair.s;
  const int m = problem.control_dim;
  const int d = problem.state_dim;

  std::vector<Matrix> fxT(s);
  std::vector<Vector> hx(s);
  for (int j = 0; j < s; ++j) {
    const Vector Uj = stage_control(u_n, j, m);
    fxT[j] = problem.f_x(X[j], Uj).transpose();
    hx[j] = problem.h_x(X[j], Uj);
  }
  // coupling(i, j) = b_j a_ji / b_i
  Matrix coupling(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      coupling(i, j) = pair.b[j] * pair.A(j, i) / pair.b[i];

  StageAdjoints adj;
  adj.Lambda.assign(s, lambda_next);
  adj.G.resize(s);
  auto g_of = [&](int j) { return Vector(-fxT[j] * adj.Lambda[j] + hx[j]); };

  if (pair.explicit_flag) {
    // coupling(i, j) vanishes unless j > i
    for (int i = s - 1; i >= 0; --i) {
      for (int j = i + 1; j < s; ++j)
        if (coupling(i, j) != 0.0)
          adj.Lambda[i] -= tau * coupling(i, j) * adj.G[j];
      adj.G[i] = g_of(i);
    }
    return adj;
  }

  if (cfg.method == StageMethod::newton) {
    // The adjoint stage system is linear in Lambda.
    Matrix sys = Matrix::Identity(s * d, s * d);
    Vector rhs(s * d);
    for (int i = 0; i < s; ++i) {
      Vector r = lambda_next;
      for (int j = 0; j < s; ++j) {
        if (coupling(i, j) == 0.0)
          continue;
        sys.block(i * d, j * d, d, d) -= tau * coupling(i, j) * fxT[j];
        r -= tau * coupling(i, j) * hx[j];
      }
      rhs.segment(i * d, d) = r;
    }
    const Vector sol = sys.partialPivLu().solve(rhs);
    for (int i = 0; i < s; ++i) {
      adj.Lambda[i] = sol.segment(i * d, d);
      adj.G[i] = g_of(i);
    }
    if (!sol.allFinite())
      throw StageDivergence(step, "adjoint stages, singular stage system");
    return adj;
  }

  const double tol = cfg.residual_tol * (1.0 + lambda_next.lpNorm<Eigen::Infinity>());
  double residual = 0.0;
  for (int iter = 0; iter < cfg.max_inner_iters; ++iter) {
    for (int j = 0; j < s; ++j)
      adj.G[j] = g_of(j);
    std::vector<Vector> mapped(s, lambda_next);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (coupling(i, j) != 0.0)
          mapped[i] -= tau * coupling(i, j) * adj.G[j];
    residual = inf_norm(mapped, adj.Lambda);
    if (!std::isfinite(residual))
      break;
    if (residual <= tol)
      return adj;
    for (int i = 0; i < s; ++i)
      adj.Lambda[i] = (1.0 - cfg.damping) * adj.Lambda[i] + cfg.damping * mapped[i];
  }
  throw StageDivergence(step, "adjoint stages, " +
                                  describe_failure(residual, tol, cfg.max_inner_iters));
}

TrajectoryPair forward_sweep(const OcProblem &problem, const ButcherPair &pair,
                             const Vector &xi, const ControlGrid &u, double horizon,
                             const StageSolveConfig &cfg) {
  if (xi.size() != problem.state_dim)
    throw DimensionError("initial state has wrong dimension");
  if (u.stages() != pair.s || u.control_dim() != problem.control_dim)
    throw DimensionError("control grid does not match tableau stages / control dimension");
  if (!(horizon > 0.0))
    throw ConfigError("horizon must be positive");

  TrajectoryPair traj;
  traj.steps = u.steps();
  traj.stages = pair.s;
  traj.horizon = horizon;
  traj.tau = horizon / u.steps();
  const StepSizeCheck check = check_step_size(pair, problem.lipschitz_K, traj.tau);
  if (!check.ok)
    traj.warnings.push_back(check.message);

  traj.x.reserve(traj.steps + 1);
  traj.X.reserve(static_cast<std::size_t>(traj.steps) * pair.s);
  traj.x.push_back(xi);
  for (int n = 0; n < traj.steps; ++n) {
    StageStates st = solve_state_stages(problem, pair, traj.x[n], u.step(n), traj.tau, cfg, n);
    Vector next = traj.x[n];
    for (int i = 0; i < pair.s; ++i)
      next += traj.tau * pair.b[i] * st.F[i];
    for (int i = 0; i < pair.s; ++i)
      traj.X.push_back(std::move(st.X[i]));
    traj.x.push_back(std::move(next));
  }
  return traj;
}

TrajectoryPair backward_sweep(const OcProblem &problem, const ButcherPair &pair,
                              const TrajectoryPair &state, const ControlGrid &u,
                              const StageSolveConfig &cfg) {
  if (u.steps() != state.steps || u.stages() != state.stages || pair.s != state.stages)
    throw DimensionError("backward_sweep: control grid does not match trajectory");

  TrajectoryPair traj = state;
  const int N = traj.steps;
  const int s = pair.s;
  traj.lambda.assign(N + 1, Vector());
  traj.Lambda.assign(static_cast<std::size_t>(N) * s, Vector());
  traj.G.assign(static_cast<std::size_t>(N) * s, Vector());
  traj.lambda[N] = -problem.phi_x(traj.x[N]);

  std::vector<Vector> X(s);
  for (int n = N - 1; n >= 0; --n) {
    for (int i = 0; i < s; ++i)
      X[i] = traj.X[n * s + i];
    StageAdjoints adj =
        solve_adjoint_stages(problem, pair, X, u.step(n), traj.lambda[n + 1], traj.tau, cfg, n);
    Vector lam = traj.lambda[n + 1];
    for (int i = 0; i < s; ++i)
      lam -= traj.tau * pair.b[i] * adj.G[i];
    traj.lambda[n] = std::move(lam);
    for (int i = 0; i < s; ++i) {
      traj.Lambda[n * s + i] = std::move(adj.Lambda[i]);
      traj.G[n * s + i] = std::move(adj.G[i]);
    }
  }
  traj.has_adjoint = true;
  return traj;
}

Matrix stage_sensitivity(const OcProblem &problem, const ButcherPair &pair,
                         const StageStates &stages, const StageControls &u_n, double tau) {
  const int s = pair.s;
  const int d = problem.state_dim;
  const int m = problem.control_dim;
  Matrix rhs(s * d, d);
  for (int i = 0; i < s; ++i)
    rhs.block(i * d, 0, d, d).setIdentity();
  if (pair.A.isZero(0.0))
    return rhs;

  Matrix sys = Matrix::Identity(s * d, s * d);
  for (int j = 0; j < s; ++j) {
    const Matrix fx = problem.f_x(stages.X[j], stage_control(u_n, j, m));
    for (int i = 0; i < s; ++i)
      if (pair.A(i, j) != 0.0)
        sys.block(i * d, j * d, d, d) -= tau * pair.A(i, j) * fx;
  }
  Eigen::FullPivLU<Matrix> lu(sys);
  if (!lu.isInvertible())
    throw PsiSolveFailure("Psi solve failure: singular stage sensitivity system");
  return lu.solve(rhs);
}

HamiltonianTerms hamiltonian_terms(const OcProblem &problem, const ButcherPair &pair,
                                   const Vector &x, const Vector &lambda_next,
                                   const StageControls &u_n, double tau,
                                   const StageSolveConfig &cfg, bool with_grad_x) {
  const int s = pair.s;
  const int d = problem.state_dim;
  const int m = problem.control_dim;
  const StageStates st = solve_state_stages(problem, pair, x, u_n, tau, cfg);

  HamiltonianTerms terms;
  terms.f_tau = Vector::Zero(d);
  for (int i = 0; i < s; ++i) {
    terms.f_tau += pair.b[i] * st.F[i];
    terms.h_tau += pair.b[i] * problem.h(st.X[i], stage_control(u_n, i, m));
  }
  terms.value = lambda_next.dot(terms.f_tau) - terms.h_tau;

  if (with_grad_x) {
    const Matrix psi = stage_sensitivity(problem, pair, st, u_n, tau);
    terms.grad_x = Vector::Zero(d);
    for (int j = 0; j < s; ++j) {
      const Vector Uj = stage_control(u_n, j, m);
      const Vector slope =
          problem.f_x(st.X[j], Uj).transpose() * lambda_next - problem.h_x(st.X[j], Uj);
      terms.grad_x += pair.b[j] * psi.block(j * d, 0, d, d).transpose() * slope;
    }
  }
  return terms;
}

double hamiltonian_tau(const OcProblem &problem, const ButcherPair &pair, const Vector &x,
                       const Vector &lambda_next, const StageControls &u_n, double tau,
                       const StageSolveConfig &cfg) {
  return hamiltonian_terms(problem, pair, x, lambda_next, u_n, tau, cfg, false).value;
}

Vector hamiltonian_tau_grad_x(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &x, const Vector &lambda_next,
                              const StageControls &u_n, double tau,
                              const StageSolveConfig &cfg) {
  return hamiltonian_terms(problem, pair, x, lambda_next, u_n, tau, cfg, true).grad_x;
}

Vector hamiltonian_tau_grad_u(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &x, const Vector &lambda_next,
                              const StageControls &u_n, double tau,
                              const StageSolveConfig &cfg) {
  const int s = pair.s;
  const int m = problem.control_dim;
  const StageStates st = solve_state_stages(problem, pair, x, u_n, tau, cfg);
  const StageAdjoints adj =
      solve_adjoint_stages(problem, pair, st.X, u_n, lambda_next, tau, cfg);
  Vector grad(s * m);
  for (int i = 0; i < s; ++i) {
    const Vector Ui = stage_control(u_n, i, m);
    grad.segment(i * m, m) =
        pair.b[i] * (problem.f_u(st.X[i], Ui).transpose() * adj.Lambda[i] -
                     problem.h_u(st.X[i], Ui));
  }
  return grad;
}

Vector discrete_cost_gradient(const OcProblem &problem, const ButcherPair &pair,
                              const TrajectoryPair &traj, const ControlGrid &u) {
  if (!traj.has_adjoint)
    throw Error("discrete_cost_gradient needs a trajectory with its adjoint part");
  if (u.steps() != traj.steps || u.stages() != pair.s || u.control_dim() != problem.control_dim)
    throw DimensionError("discrete_cost_gradient: control grid does not match trajectory");
  const int m = problem.control_dim;
  Vector grad(u.values().size());
  for (int n = 0; n < u.steps(); ++n)
    for (int i = 0; i < pair.s; ++i) {
      const Vector Ui = u.stage(n, i);
      const Vector &Xi = traj.stage_state(n, i);
      grad.segment((n * pair.s + i) * m, m) =
          -traj.tau * pair.b[i] *
          (problem.f_u(Xi, Ui).transpose() * traj.stage_adjoint(n, i) - problem.h_u(Xi, Ui));
    }
  return grad;
}

} // namespace symoc
