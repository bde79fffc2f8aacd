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

#include "symoc/tableau.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace symoc {

double ButcherPair::symplecticity_residual() const {
  double worst = 0.0;
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      worst = std::max(worst, std::abs(b[i] * A_tilde(i, j) + b[j] * A(j, i) - b[i] * b[j]));
  return worst;
}

Matrix adjoint_coefficients(const Matrix &A, const Vector &b) {
  const Eigen::Index s = b.size();
  Matrix At(s, s);
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = 0; j < s; ++j)
      At(i, j) = b[j] - b[j] * A(j, i) / b[i];
  return At;
}

ButcherPair make_adjoint_pair(const Matrix &A, const Vector &b, std::string name) {
  const Eigen::Index s = b.size();
  if (s == 0 || A.rows() != s || A.cols() != s)
    throw TableauError("tableau shape mismatch: A must be s x s with s = len(b) > 0");
  if (!A.allFinite() || !b.allFinite())
    throw TableauError("tableau contains non-finite coefficients");
  for (Eigen::Index i = 0; i < s; ++i)
    if (!(b[i] > 0.0))
      throw TableauError("non-positive weight b_" + std::to_string(i + 1));
  if (std::abs(b.sum() - 1.0) > 1e-12)
    throw TableauError("inconsistent weights: sum(b) != 1");

  ButcherPair pair;
  pair.name = std::move(name);
  pair.s = static_cast<int>(s);
  pair.A = A;
  pair.b = b;
  pair.A_tilde = adjoint_coefficients(A, b);
  pair.explicit_flag = true;
  for (Eigen::Index i = 0; i < s; ++i)
    for (Eigen::Index j = i; j < s; ++j)
      if (A(i, j) != 0.0)
        pair.explicit_flag = false;
  return pair;
}

ButcherPair symplectic_euler() {
  return make_adjoint_pair(Matrix::Zero(1, 1), Vector::Ones(1), "symplectic-euler");
}

ButcherPair implicit_midpoint() {
  // a11 = 1/2 with b1 = 1; b1 = 1/2 would violate consistency.
  return make_adjoint_pair(Matrix::Constant(1, 1, 0.5), Vector::Ones(1), "implicit-midpoint");
}

ButcherPair named_tableau(const std::string &name) {
  if (name == "symplectic-euler")
    return symplectic_euler();
  if (name == "implicit-midpoint")
    return implicit_midpoint();
  throw TableauError("unknown tableau '" + name + "'");
}

StepSizeCheck check_step_size(const ButcherPair &pair, double lipschitz_K, double tau) {
  StepSizeCheck check;
  const double amax = pair.A.cwiseAbs().maxCoeff();
  if (pair.explicit_flag || amax == 0.0) {
    check.bound = std::numeric_limits<double>::infinity();
    return check;
  }
  check.bound = 1.0 / (lipschitz_K * amax);
  check.ok = tau * lipschitz_K * amax <= 1.0;
  if (!check.ok) {
    std::ostringstream msg;
    msg << "step size " << tau << " exceeds the stage contraction bound " << check.bound
        << " for tableau '" << pair.name << "' with K = " << lipschitz_K;
    check.message = msg.str();
  }
  return check;
}

} // namespace symoc
