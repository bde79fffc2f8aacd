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

#ifndef SYMOC_TABLEAU_HPP
#define SYMOC_TABLEAU_HPP

#include <string>

#include "symoc/types.hpp"

namespace symoc {

/// Forward Runge-Kutta tableau (A, b) together with the adjoint coefficients
/// A_tilde that make the two a symplectic partitioned pair.
struct ButcherPair {
  std::string name;
  int s = 0;
  Matrix A;
  Vector b;
  Matrix A_tilde;
  bool explicit_flag = false; ///< A strictly lower triangular

  /// max_ij |b_i a~_ij + b_j a_ji - b_i b_j|.
  double symplecticity_residual() const;
};

/// a~_ij = b_j - b_j a_ji / b_i. Requires b_i > 0.
Matrix adjoint_coefficients(const Matrix &A, const Vector &b);

/// Validates the weights and builds the adjoint pair. Throws TableauError on
/// a non-positive weight, weights not summing to one (tol 1e-12) or a shape
/// mismatch.
ButcherPair make_adjoint_pair(const Matrix &A, const Vector &b, std::string name = "custom");

ButcherPair symplectic_euler();
ButcherPair implicit_midpoint();

/// "symplectic-euler" or "implicit-midpoint"; throws TableauError otherwise.
ButcherPair named_tableau(const std::string &name);

struct StepSizeCheck {
  bool ok = true;
  double bound = 0.0; ///< largest admissible tau (infinity for explicit pairs)
  std::string message;
};

/// Implicit pairs need tau * K * max_ij |a_ij| <= 1 for the stage map to be a
/// contraction; explicit pairs are always fine. Advisory only.
StepSizeCheck check_step_size(const ButcherPair &pair, double lipschitz_K, double tau);

} // namespace symoc

#endif // SYMOC_TABLEAU_HPP
