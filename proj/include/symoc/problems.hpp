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

#ifndef SYMOC_PROBLEMS_HPP
#define SYMOC_PROBLEMS_HPP

#include "symoc/problem.hpp"

namespace symoc {

/// Damped oscillator in a double-well potential, x = (q, p):
///   q' = p,  p' = q - q^3 - nu p + u,
///   J = alpha/2 |x(T) - target|^2 + int u^2 / 2.
struct DoubleWellParams {
  double nu = 1.0;
  double alpha = 10.0;
  Vector target = Vector::Unit(2, 0);            // (1, 0)
  Vector initial_state = -Vector::Unit(2, 0);    // (-1, 0)
  double horizon = 6.0;

  void validate() const;
};

/// Analytic Jacobians plus a closed-form maximizer of the augmented
/// Hamiltonian for symplectic Euler (the only tableau where the stage state
/// does not depend on u, which makes it an exact quadratic in u).
OcProblem make_double_well(const DoubleWellParams &params = {});

/// E = p^2/2 + q^4/4 - q^2/2. The saddle between the wells sits at E = 0.
double double_well_energy(const Vector &x);

/// Scalar linear-quadratic oracle: x' = a x + u, h = u^2/2, Phi = x(T)^2/2.
/// With a = 0 the optimum is the constant u* = -xi / (1 + T).
struct LqParams {
  double xi = 1.0;
  double horizon = 1.0;
  double a = 0.0;

  void validate() const;
};

OcProblem make_lq(const LqParams &params = {});

/// Continuous optimum e^{2aT} xi^2 / (2 (1 + S)), S = (e^{2aT} - 1) / (2a) (S = T when a = 0).
double lq_optimal_cost(const LqParams &params);

/// Continuous optimal control u*(t) = lambda(t) = -x(T) e^{a (T - t)}.
double lq_optimal_control(const LqParams &params, double t);

} // namespace symoc

#endif // SYMOC_PROBLEMS_HPP
