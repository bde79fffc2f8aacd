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

#include "symoc/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace symoc {

namespace {

double fd_step(const Vector &at) { return 1e-6 * (1.0 + at.norm()); }

void require(bool cond, const std::string &what) {
  if (!cond)
    throw ConfigError("problem '" + std::string(what) + "'");
}

} // namespace

Matrix fd_jacobian(const std::function<Vector(const Vector &)> &fn, const Vector &at) {
  const double step = fd_step(at);
  const Vector f0 = fn(at);
  Matrix jac(f0.size(), at.size());
  Vector probe = at;
  for (Eigen::Index k = 0; k < at.size(); ++k) {
    probe[k] = at[k] + step;
    const Vector plus = fn(probe);
    probe[k] = at[k] - step;
    const Vector minus = fn(probe);
    probe[k] = at[k];
    jac.col(k) = (plus - minus) / (2.0 * step);
  }
  return jac;
}

Vector fd_gradient(const std::function<double(const Vector &)> &fn, const Vector &at) {
  const double step = fd_step(at);
  Vector grad(at.size());
  Vector probe = at;
  for (Eigen::Index k = 0; k < at.size(); ++k) {
    probe[k] = at[k] + step;
    const double plus = fn(probe);
    probe[k] = at[k] - step;
    const double minus = fn(probe);
    probe[k] = at[k];
    grad[k] = (plus - minus) / (2.0 * step);
  }
  return grad;
}

void OcProblem::validate() const {
  if (state_dim <= 0 || control_dim <= 0)
    throw ConfigError("problem dimensions must be positive");
  if (!(lipschitz_K > 0.0))
    throw ConfigError("problem lipschitz_K must be positive");
  require(static_cast<bool>(dynamics), "dynamics is missing");
  require(static_cast<bool>(running_cost), "running_cost is missing");
  require(static_cast<bool>(end_cost), "end_cost is missing");
}

Vector OcProblem::f(const Vector &x, const Vector &u) const { return dynamics(x, u); }

Matrix OcProblem::f_x(const Vector &x, const Vector &u) const {
  if (dynamics_jac_x)
    return dynamics_jac_x(x, u);
  return fd_jacobian([&](const Vector &y) { return dynamics(y, u); }, x);
}

Matrix OcProblem::f_u(const Vector &x, const Vector &u) const {
  if (dynamics_jac_u)
    return dynamics_jac_u(x, u);
  return fd_jacobian([&](const Vector &v) { return dynamics(x, v); }, u);
}

double OcProblem::h(const Vector &x, const Vector &u) const { return running_cost(x, u); }

Vector OcProblem::h_x(const Vector &x, const Vector &u) const {
  if (running_cost_grad_x)
    return running_cost_grad_x(x, u);
  return fd_gradient([&](const Vector &y) { return running_cost(y, u); }, x);
}

Vector OcProblem::h_u(const Vector &x, const Vector &u) const {
  if (running_cost_grad_u)
    return running_cost_grad_u(x, u);
  return fd_gradient([&](const Vector &v) { return running_cost(x, v); }, u);
}

double OcProblem::phi(const Vector &x) const { return end_cost(x); }

Vector OcProblem::phi_x(const Vector &x) const {
  if (end_cost_grad)
    return end_cost_grad(x);
  return fd_gradient(end_cost, x);
}

Vector OcProblem::project(const Vector &u) const {
  return control_project ? control_project(u) : u;
}

ControlGrid::ControlGrid(int steps, int stages, int control_dim)
    : ControlGrid(steps, stages, control_dim,
                  Vector::Zero(static_cast<Eigen::Index>(steps) * stages * control_dim)) {}

ControlGrid::ControlGrid(int steps, int stages, int control_dim, Vector values)
    : steps_(steps), stages_(stages), control_dim_(control_dim), values_(std::move(values)) {
  if (steps <= 0 || stages <= 0 || control_dim <= 0)
    throw DimensionError("control grid dimensions must be positive");
  if (values_.size() != static_cast<Eigen::Index>(steps) * stages * control_dim)
    throw DimensionError("control grid holds " + std::to_string(values_.size()) +
                         " values, expected N*s*m = " +
                         std::to_string(steps * stages * control_dim));
}

double discrete_cost(const OcProblem &problem, const TrajectoryPair &traj,
                     const ControlGrid &u, const Vector &b) {
  if (u.steps() != traj.steps || u.stages() != traj.stages || b.size() != u.stages())
    throw DimensionError("discrete_cost: grid shape does not match trajectory/tableau");
  if (u.control_dim() != problem.control_dim ||
      static_cast<int>(traj.x.size()) != traj.steps + 1 ||
      traj.x.back().size() != problem.state_dim)
    throw DimensionError("discrete_cost: grid does not match problem dimensions");

  double running = 0.0;
  for (int n = 0; n < u.steps(); ++n)
    for (int i = 0; i < u.stages(); ++i)
      running += b[i] * problem.h(traj.stage_state(n, i), u.stage(n, i));
  return problem.phi(traj.x.back()) + traj.tau * running;
}

double control_update_norm(const ControlGrid &u_new, const ControlGrid &u_old) {
  if (!u_new.same_shape(u_old))
    throw DimensionError("control_update_norm: grids differ in shape");
  double total = 0.0;
  for (int n = 0; n < u_new.steps(); ++n)
    total += (u_new.step(n) - u_old.step(n)).norm();
  return total;
}

ControlGrid project_controls(const OcProblem &problem, ControlGrid u) {
  if (!problem.control_project)
    return u;
  for (int n = 0; n < u.steps(); ++n)
    for (int i = 0; i < u.stages(); ++i)
      u.stage(n, i) = problem.project(u.stage(n, i));
  return u;
}

bool is_admissible(const OcProblem &problem, const ControlGrid &u, double tol) {
  for (int n = 0; n < u.steps(); ++n)
    for (int i = 0; i < u.stages(); ++i) {
      const Vector ui = u.stage(n, i);
      if ((problem.project(ui) - ui).lpNorm<Eigen::Infinity>() > tol)
        return false;
    }
  return true;
}

DerivativeCheckReport check_derivatives(const OcProblem &problem, int samples,
                                        std::uint64_t seed, double rel_tol) {
  problem.validate();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](int dim) {
    Vector v(dim);
    for (int k = 0; k < dim; ++k)
      v[k] = normal(rng);
    return v;
  };

  DerivativeCheckReport report;
  auto record = [&](const char *entry, const Matrix &analytic, const Matrix &numeric) {
    const double scale = std::max(1.0, numeric.lpNorm<Eigen::Infinity>());
    const double err = (analytic - numeric).lpNorm<Eigen::Infinity>() / scale;
    if (err > report.worst_relative_error) {
      report.worst_relative_error = err;
      report.worst_entry = entry;
    }
  };

  for (int k = 0; k < samples; ++k) {
    const Vector x = draw(problem.state_dim);
    const Vector u = problem.project(draw(problem.control_dim));
    if (problem.dynamics_jac_x)
      record("dynamics_jac_x", problem.dynamics_jac_x(x, u),
             fd_jacobian([&](const Vector &y) { return problem.dynamics(y, u); }, x));
    if (problem.dynamics_jac_u)
      record("dynamics_jac_u", problem.dynamics_jac_u(x, u),
             fd_jacobian([&](const Vector &v) { return problem.dynamics(x, v); }, u));
    if (problem.running_cost_grad_x)
      record("running_cost_grad_x", problem.running_cost_grad_x(x, u),
             fd_gradient([&](const Vector &y) { return problem.running_cost(y, u); }, x));
    if (problem.running_cost_grad_u)
      record("running_cost_grad_u", problem.running_cost_grad_u(x, u),
             fd_gradient([&](const Vector &v) { return problem.running_cost(x, v); }, u));
    if (problem.end_cost_grad)
      record("end_cost_grad", problem.end_cost_grad(x), fd_gradient(problem.end_cost, x));
  }
  report.passed = report.worst_relative_error <= rel_tol;
  return report;
}

} // namespace symoc
