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

#include "symoc/oracle.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "symoc/problems.hpp"
#include "symoc/regularized.hpp"

namespace symoc {

double relative_error(const Vector &a, const Vector &b) {
  const double scale = std::max(a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>());
  if (scale == 0.0)
    return 0.0;
  return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

double cost_of(const OcProblem &problem, const ButcherPair &pair, const Vector &xi,
               const ControlGrid &u, double horizon, const StageSolveConfig &cfg) {
  const TrajectoryPair traj = forward_sweep(problem, pair, xi, u, horizon, cfg);
  return discrete_cost(problem, traj, u, pair.b);
}

Vector fd_cost_gradient(const OcProblem &problem, const ButcherPair &pair, const Vector &xi,
                        const ControlGrid &u, double horizon, double step,
                        const StageSolveConfig &cfg) {
  if (step <= 0.0)
    step = 1e-6 * (1.0 + u.values().lpNorm<Eigen::Infinity>());
  ControlGrid probe = u;
  Vector grad(u.values().size());
  for (Eigen::Index k = 0; k < grad.size(); ++k) {
    probe.values()[k] = u.values()[k] + step;
    const double plus = cost_of(problem, pair, xi, probe, horizon, cfg);
    probe.values()[k] = u.values()[k] - step;
    const double minus = cost_of(problem, pair, xi, probe, horizon, cfg);
    probe.values()[k] = u.values()[k];
    grad[k] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

Vector fd_initial_state_gradient(const OcProblem &problem, const ButcherPair &pair,
                                 const Vector &xi, const ControlGrid &u, double horizon,
                                 const StageSolveConfig &cfg) {
  return fd_gradient([&](const Vector &x0) { return cost_of(problem, pair, x0, u, horizon, cfg); },
                     xi);
}

namespace {

struct DescentResult {
  ControlGrid u;
  double cost;
};

DescentResult descend(const OcProblem &problem, const ButcherPair &pair, const Vector &xi,
                      ControlGrid u, double horizon, const DirectMinimizeOptions &opts,
                      const StageSolveConfig &cfg) {
  u = project_controls(problem, std::move(u));
  double cost = cost_of(problem, pair, xi, u, horizon, cfg);
  Vector grad = fd_cost_gradient(problem, pair, xi, u, horizon, 0.0, cfg);
  double alpha = 1e-2;
  for (int it = 0; it < opts.max_iters; ++it) {
    if (grad.lpNorm<Eigen::Infinity>() <= opts.grad_tol)
      break;
    bool accepted = false;
    ControlGrid trial = u;
    double trial_cost = cost;
    for (int bt = 0; bt < 60; ++bt, alpha *= 0.5) {
      trial.values() = u.values() - alpha * grad;
      trial = project_controls(problem, std::move(trial));
      trial_cost = cost_of(problem, pair, xi, trial, horizon, cfg);
      if (std::isfinite(trial_cost) &&
          trial_cost <= cost - 1e-4 * grad.dot(u.values() - trial.values()) &&
          trial_cost < cost) {
        accepted = true;
        break;
      }
    }
    if (!accepted)
      break;
    const Vector trial_grad = fd_cost_gradient(problem, pair, xi, trial, horizon, 0.0, cfg);
    const Vector s = trial.values() - u.values();
    const Vector y = trial_grad - grad;
    const double sy = s.dot(y);
    alpha = sy > 0.0 ? s.squaredNorm() / sy : 1e-2;
    u = std::move(trial);
    cost = trial_cost;
    grad = trial_grad;
  }
  return {std::move(u), cost};
}

} // namespace

DirectMinimum direct_minimize(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &xi, int steps, double horizon,
                              const DirectMinimizeOptions &opts, const StageSolveConfig &cfg) {
  const int dim = steps * pair.s * problem.control_dim;
  if (dim > 20)
    throw ConfigError("direct_minimize is meant for tiny instances (N*s*m <= 20)");

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal(0.0, opts.start_scale);

  DirectMinimum best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int start = 0; start <= opts.random_starts; ++start) {
    ControlGrid u0(steps, pair.s, problem.control_dim);
    if (start > 0)
      for (Eigen::Index k = 0; k < u0.values().size(); ++k)
        u0.values()[k] = normal(rng);
    DescentResult r = descend(problem, pair, xi, std::move(u0), horizon, opts, cfg);
    ++best.starts;
    if (r.cost < best.cost) {
      best.cost = r.cost;
      best.control = std::move(r.u);
    }
  }
  return best;
}

std::vector<ValidationCheck> run_validation_suite(std::uint64_t seed) {
  std::vector<ValidationCheck> checks;
  auto add = [&](std::string name, double value, double tol) {
    checks.push_back({std::move(name), value <= tol, value, tol});
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  // Tableau symplecticity and involution.
  {
    std::vector<ButcherPair> pairs{symplectic_euler(), implicit_midpoint()};
    std::uniform_int_distribution<int> stages(1, 4);
    std::uniform_real_distribution<double> weight(0.1, 1.0);
    for (int k = 0; k < 10; ++k) {
      const int s = stages(rng);
      Matrix A(s, s);
      Vector b(s);
      for (int i = 0; i < s; ++i) {
        b[i] = weight(rng);
        for (int j = 0; j < s; ++j)
          A(i, j) = uniform(rng);
      }
      b /= b.sum();
      b[s - 1] = 1.0 - (b.sum() - b[s - 1]);
      pairs.push_back(make_adjoint_pair(A, b));
    }
    double residual = 0.0;
    double involution = 0.0;
    for (const ButcherPair &pair : pairs) {
      residual = std::max(residual, pair.symplecticity_residual());
      involution = std::max(involution, (adjoint_coefficients(pair.A_tilde, pair.b) - pair.A)
                                            .lpNorm<Eigen::Infinity>());
    }
    add("tableau symplecticity residual", residual, 1e-14);
    add("adjoint construction involution", involution, 1e-14);
  }

  // Derivative self-checks of the built-in problems.
  {
    const double worst = std::max(check_derivatives(make_double_well()).worst_relative_error,
                                  check_derivatives(make_lq()).worst_relative_error);
    add("built-in problem derivatives vs finite differences", worst, 1e-6);
  }

  // Adjoint exactness and stage-control gradient identity on random controls.
  {
    StageSolveConfig tight;
    tight.method = StageMethod::newton;
    tight.residual_tol = 1e-14;
    const OcProblem problems[] = {make_double_well(), make_lq({0.7, 2.0, -0.5})};
    const Vector starts[] = {DoubleWellParams{}.initial_state, Vector::Constant(1, 0.7)};
    const double horizons[] = {6.0, 2.0};
    double lambda_err = 0.0;
    double grad_err = 0.0;
    for (int pi = 0; pi < 2; ++pi)
      for (const ButcherPair &pair : {symplectic_euler(), implicit_midpoint()})
        for (int trial = 0; trial < 5; ++trial) {
          ControlGrid u(8, pair.s, problems[pi].control_dim);
          for (Eigen::Index k = 0; k < u.values().size(); ++k)
            u.values()[k] = 0.5 * normal(rng);
          const TrajectoryPair fwd =
              forward_sweep(problems[pi], pair, starts[pi], u, horizons[pi], tight);
          const TrajectoryPair traj = backward_sweep(problems[pi], pair, fwd, u, tight);
          const Vector fd_xi =
              fd_initial_state_gradient(problems[pi], pair, starts[pi], u, horizons[pi], tight);
          lambda_err = std::max(lambda_err, relative_error(traj.lambda[0], -fd_xi));
          const Vector fd_u =
              fd_cost_gradient(problems[pi], pair, starts[pi], u, horizons[pi], 0.0, tight);
          grad_err = std::max(
              grad_err, relative_error(discrete_cost_gradient(problems[pi], pair, traj, u), fd_u));
        }
    add("adjoint exactness lambda_0 = -dJ/dxi", lambda_err, 1e-5);
    add("stage-control gradient vs finite differences", grad_err, 1e-5);
  }

  // LQ analytic optimum with the implicit midpoint rule.
  {
    const LqParams params{1.0, 1.0, 0.0};
    const OcProblem lq = make_lq(params);
    RegularizationConfig reg;
    reg.rho = 1.0;
    reg.epsilon = 1e-12;
    const ButcherPair pair = implicit_midpoint();
    const IterationResult run = run_iteration(lq, pair, Vector::Constant(1, params.xi),
                                              ControlGrid(160, 1, 1), params.horizon, reg);
    add("LQ N=160 midpoint vs analytic optimum", std::abs(run.cost - lq_optimal_cost(params)),
        1e-3);
  }

  // Direct transcription agreement.
  {
    const LqParams params{1.0, 1.0, 0.0};
    const OcProblem lq = make_lq(params);
    const ButcherPair pair = symplectic_euler();
    RegularizationConfig reg;
    reg.rho = 1.0;
    reg.epsilon = 1e-12;
    const Vector xi = Vector::Constant(1, params.xi);
    const double iterated =
        run_iteration(lq, pair, xi, ControlGrid(5, 1, 1), params.horizon, reg).cost;
    const double direct = direct_minimize(lq, pair, xi, 5, params.horizon).cost;
    add("LQ N=5 direct minimization agreement", std::abs(iterated - direct), 1e-6);
  }
  {
    const DoubleWellParams params;
    const OcProblem dw = make_double_well(params);
    const ButcherPair pair = symplectic_euler();
    RegularizationConfig reg;
    reg.rho = 400.0;
    reg.epsilon = 1e-10;
    reg.max_outer_iters = 200000;
    const double iterated = run_iteration(dw, pair, params.initial_state, ControlGrid(10, 1, 1),
                                          params.horizon, reg)
                                .cost;
    const double direct = direct_minimize(dw, pair, params.initial_state, 10, params.horizon).cost;
    add("double-well N=10 direct minimization agreement", std::abs(iterated - direct), 1e-4);
  }
  return checks;
}

} // namespace symoc
