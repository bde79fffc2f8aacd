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

#include "symoc/problems.hpp"

#include <cmath>

namespace symoc {

void DoubleWellParams::validate() const {
  if (!(nu >= 0.0))
    throw ConfigError("double-well: nu must be >= 0");
  if (!(alpha > 0.0))
    throw ConfigError("double-well: alpha must be positive");
  if (target.size() != 2 || initial_state.size() != 2)
    throw ConfigError("double-well: target and initial state must have two components");
  if (!(horizon > 0.0))
    throw ConfigError("double-well: horizon must be positive");
}

double double_well_energy(const Vector &x) {
  const double q = x[0];
  const double p = x[1];
  return 0.5 * p * p + 0.25 * q * q * q * q - 0.5 * q * q;
}

OcProblem make_double_well(const DoubleWellParams &params) {
  params.validate();
  const double nu = params.nu;
  const double alpha = params.alpha;
  const Vector target = params.target;

  OcProblem prob;
  prob.name = "double-well";
  prob.state_dim = 2;
  prob.control_dim = 1;
  prob.lipschitz_K = 4.0;

  prob.dynamics = [nu](const Vector &x, const Vector &u) {
    const double q = x[0];
    const double p = x[1];
    Vector out(2);
    out << p, q - q * q * q - nu * p + u[0];
    return out;
  };
  prob.dynamics_jac_x = [nu](const Vector &x, const Vector &) {
    Matrix jac(2, 2);
    jac << 0.0, 1.0, 1.0 - 3.0 * x[0] * x[0], -nu;
    return jac;
  };
  prob.dynamics_jac_u = [](const Vector &, const Vector &) {
    Matrix jac(2, 1);
    jac << 0.0, 1.0;
    return jac;
  };
  prob.running_cost = [](const Vector &, const Vector &u) { return 0.5 * u.squaredNorm(); };
  prob.running_cost_grad_x = [](const Vector &, const Vector &) { return Vector(Vector::Zero(2)); };
  prob.running_cost_grad_u = [](const Vector &, const Vector &u) { return u; };
  prob.end_cost = [alpha, target](const Vector &x) {
    return 0.5 * alpha * (x - target).squaredNorm();
  };
  prob.end_cost_grad = [alpha, target](const Vector &x) {
    return Vector(alpha * (x - target));
  };
  prob.energy = double_well_energy;

  // With a single stage and a11 = 0 the stage state is x itself, so only the
  // p-row of f depends on u and H_x does not depend on u at all:
  //   H~(u) = const + lambda_2 u - u^2/2 - rho/2 (q_2 - f_2(x, 0) - u)^2.
  prob.closed_form_argmax = [nu](const ArgmaxQuery &query) -> std::optional<Vector> {
    if (query.A.rows() != 1 || query.A(0, 0) != 0.0)
      return std::nullopt;
    const double q = query.x[0];
    const double p = query.x[1];
    const double drift = q - q * q * q - nu * p;
    Vector u(1);
    u[0] = (query.lambda_next[1] + query.rho * (query.q[1] - drift)) / (1.0 + query.rho);
    return u;
  };
  return prob;
}

void LqParams::validate() const {
  if (!std::isfinite(xi) || !std::isfinite(a))
    throw ConfigError("lq: xi and a must be finite");
  if (!(horizon > 0.0))
    throw ConfigError("lq: horizon must be positive");
}

OcProblem make_lq(const LqParams &params) {
  params.validate();
  const double a = params.a;

  OcProblem prob;
  prob.name = "lq";
  prob.state_dim = 1;
  prob.control_dim = 1;
  prob.lipschitz_K = std::max(1.0, std::abs(a));

  prob.dynamics = [a](const Vector &x, const Vector &u) { return Vector(a * x + u); };
  prob.dynamics_jac_x = [a](const Vector &, const Vector &) { return Matrix(Matrix::Constant(1, 1, a)); };
  prob.dynamics_jac_u = [](const Vector &, const Vector &) { return Matrix(Matrix::Ones(1, 1)); };
  prob.running_cost = [](const Vector &, const Vector &u) { return 0.5 * u.squaredNorm(); };
  prob.running_cost_grad_x = [](const Vector &, const Vector &) { return Vector(Vector::Zero(1)); };
  prob.running_cost_grad_u = [](const Vector &, const Vector &u) { return u; };
  prob.end_cost = [](const Vector &x) { return 0.5 * x.squaredNorm(); };
  prob.end_cost_grad = [](const Vector &x) { return x; };
  return prob;
}

namespace {

double lq_s(const LqParams &params) {
  const double T = params.horizon;
  if (params.a == 0.0)
    return T;
  return std::expm1(2.0 * params.a * T) / (2.0 * params.a);
}

} // namespace

double lq_optimal_cost(const LqParams &params) {
  const double S = lq_s(params);
  return std::exp(2.0 * params.a * params.horizon) * params.xi * params.xi / (2.0 * (1.0 + S));
}

double lq_optimal_control(const LqParams &params, double t) {
  const double T = params.horizon;
  const double x_final = std::exp(params.a * T) * params.xi / (1.0 + lq_s(params));
  return -x_final * std::exp(params.a * (T - t));
}

} // namespace symoc
