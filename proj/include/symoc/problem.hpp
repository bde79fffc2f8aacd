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

#ifndef SYMOC_PROBLEM_HPP
#define SYMOC_PROBLEM_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symoc/types.hpp"

namespace symoc {

/// Everything a closed-form stage maximizer may look at. The tableau is
/// passed as raw coefficients so problems stay independent of ButcherPair.
struct ArgmaxQuery {
  const Matrix &A;
  const Vector &b;
  const Vector &x;
  const Vector &lambda_next;
  const Vector &u_init; ///< stacked stage controls, size s*m
  const Vector &q;      ///< state forward difference
  const Vector &p;      ///< adjoint forward difference
  double rho;
  double tau;
};

/// Returns the maximizer of the augmented stage Hamiltonian, or nullopt when
/// the formula does not apply to the given tableau.
using ClosedFormArgmax = std::function<std::optional<Vector>(const ArgmaxQuery &)>;

/// Optimal control problem: minimize end_cost(x(T)) + int running_cost
/// subject to x' = dynamics(x, u), u in the admissible set.
///
/// Derivative callbacks may be left empty, in which case central finite
/// differences with step 1e-6 * (1 + |x|) are used. Callbacks must be pure:
/// sweeps over disjoint steps may call them concurrently.
struct OcProblem {
  using VecFn = std::function<Vector(const Vector &, const Vector &)>;
  using MatFn = std::function<Matrix(const Vector &, const Vector &)>;
  using ScalarFn = std::function<double(const Vector &, const Vector &)>;

  std::string name;
  int state_dim = 0;
  int control_dim = 0;

  VecFn dynamics;
  MatFn dynamics_jac_x;
  MatFn dynamics_jac_u;

  ScalarFn running_cost;
  VecFn running_cost_grad_x;
  VecFn running_cost_grad_u;

  std::function<double(const Vector &)> end_cost;
  std::function<Vector(const Vector &)> end_cost_grad;

  /// Map onto the admissible control set; empty means unconstrained.
  std::function<Vector(const Vector &)> control_project;
  ClosedFormArgmax closed_form_argmax;

  /// Optional scalar diagnostic written next to each trajectory point.
  std::function<double(const Vector &)> energy;

  /// Declared Lipschitz bound, only used for the step-size check.
  double lipschitz_K = 1.0;

  /// Throws ConfigError when a required callback or dimension is missing.
  void validate() const;

  Vector f(const Vector &x, const Vector &u) const;
  Matrix f_x(const Vector &x, const Vector &u) const;
  Matrix f_u(const Vector &x, const Vector &u) const;
  double h(const Vector &x, const Vector &u) const;
  Vector h_x(const Vector &x, const Vector &u) const;
  Vector h_u(const Vector &x, const Vector &u) const;
  double phi(const Vector &x) const;
  Vector phi_x(const Vector &x) const;
  Vector project(const Vector &u) const;
};

/// Stage controls U_{i,n} on a uniform grid, stored flat as
/// [n][i][component].
class ControlGrid {
public:
  ControlGrid() = default;
  ControlGrid(int steps, int stages, int control_dim);
  ControlGrid(int steps, int stages, int control_dim, Vector values);

  int steps() const { return steps_; }
  int stages() const { return stages_; }
  int control_dim() const { return control_dim_; }
  int step_size() const { return stages_ * control_dim_; }

  /// Stacked stage controls u_n of step n (size s*m).
  Eigen::VectorBlock<Vector> step(int n) { return values_.segment(n * step_size(), step_size()); }
  Eigen::VectorBlock<const Vector> step(int n) const {
    return values_.segment(n * step_size(), step_size());
  }

  Eigen::VectorBlock<Vector> stage(int n, int i) {
    return values_.segment(n * step_size() + i * control_dim_, control_dim_);
  }
  Eigen::VectorBlock<const Vector> stage(int n, int i) const {
    return values_.segment(n * step_size() + i * control_dim_, control_dim_);
  }

  const Vector &values() const { return values_; }
  Vector &values() { return values_; }

  bool same_shape(const ControlGrid &other) const {
    return steps_ == other.steps_ && stages_ == other.stages_ &&
           control_dim_ == other.control_dim_;
  }

private:
  int steps_ = 0;
  int stages_ = 0;
  int control_dim_ = 0;
  Vector values_;
};

/// Grid and stage values of the state and adjoint for one control grid.
/// Stage arrays are indexed n * stages + i.
struct TrajectoryPair {
  int steps = 0;
  int stages = 0;
  double horizon = 0.0;
  double tau = 0.0;

  std::vector<Vector> x;      ///< x_0..x_N
  std::vector<Vector> X;      ///< stage states
  std::vector<Vector> lambda; ///< lambda_0..lambda_N (adjoint part)
  std::vector<Vector> Lambda; ///< stage adjoints
  std::vector<Vector> G;      ///< stage adjoint derivatives g(X, Lambda, U)
  bool has_adjoint = false;

  std::vector<std::string> warnings;

  const Vector &stage_state(int n, int i) const { return X[n * stages + i]; }
  const Vector &stage_adjoint(int n, int i) const { return Lambda[n * stages + i]; }
  const Vector &stage_adjoint_rate(int n, int i) const { return G[n * stages + i]; }
  double time(int n) const { return horizon * n / steps; }
};

/// Phi(x_N) + tau * sum_n sum_i b_i h(X_{i,n}, U_{i,n}).
double discrete_cost(const OcProblem &problem, const TrajectoryPair &traj,
                     const ControlGrid &u, const Vector &b);

/// sum_n |u_new_n - u_old_n| with the stage controls of a step stacked.
double control_update_norm(const ControlGrid &u_new, const ControlGrid &u_old);

/// Applies the problem's projection to every stage control.
ControlGrid project_controls(const OcProblem &problem, ControlGrid u);

/// True when every stage control is a fixed point of the projection.
bool is_admissible(const OcProblem &problem, const ControlGrid &u, double tol = 0.0);

// Central finite differences, step 1e-6 * (1 + |point|).
Matrix fd_jacobian(const std::function<Vector(const Vector &)> &fn, const Vector &at);
Vector fd_gradient(const std::function<double(const Vector &)> &fn, const Vector &at);

struct DerivativeCheckReport {
  bool passed = true;
  double worst_relative_error = 0.0;
  std::string worst_entry; ///< which derivative produced the worst error
};

/// Compares every supplied derivative callback against central differences
/// at random sample points.
DerivativeCheckReport check_derivatives(const OcProblem &problem, int samples = 100,
                                        std::uint64_t seed = 1, double rel_tol = 1e-6);

} // namespace symoc

#endif // SYMOC_PROBLEM_HPP
