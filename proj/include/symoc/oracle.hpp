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

#ifndef SYMOC_ORACLE_HPP
#define SYMOC_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "symoc/sweep.hpp"

namespace symoc {

/// |a - b|_inf / max(|a|_inf, |b|_inf); zero when both vanish.
double relative_error(const Vector &a, const Vector &b);

/// J^tau for control u: forward sweep plus discrete cost.
double cost_of(const OcProblem &problem, const ButcherPair &pair, const Vector &xi,
               const ControlGrid &u, double horizon, const StageSolveConfig &cfg = {});

/// Central differences of J^tau in every U_{i,n} (ControlGrid layout).
/// step <= 0 selects 1e-6 * (1 + |u|_inf).
Vector fd_cost_gradient(const OcProblem &problem, const ButcherPair &pair, const Vector &xi,
                        const ControlGrid &u, double horizon, double step = 0.0,
                        const StageSolveConfig &cfg = {});

/// Central differences of J^tau in the initial state.
Vector fd_initial_state_gradient(const OcProblem &problem, const ButcherPair &pair,
                                 const Vector &xi, const ControlGrid &u, double horizon,
                                 const StageSolveConfig &cfg = {});

struct DirectMinimizeOptions {
  int random_starts = 5; ///< in addition to the zero control
  std::uint64_t seed = 7;
  double start_scale = 1.0;
  int max_iters = 20000;
  double grad_tol = 1e-9;
};

struct DirectMinimum {
  ControlGrid control;
  double cost = 0.0;
  int starts = 0;
};

/// Brute-force discrete optimum for tiny instances (N*s*m <= 20): gradient
/// descent on J^tau with finite-difference gradients, Barzilai-Borwein trial
/// steps and Armijo backtracking, best of several seeded starts.
DirectMinimum direct_minimize(const OcProblem &problem, const ButcherPair &pair,
                              const Vector &xi, int steps, double horizon,
                              const DirectMinimizeOptions &opts = {},
                              const StageSolveConfig &cfg = {});

struct ValidationCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
};

/// Adjoint exactness, tableau symplecticity, gradient agreement, LQ analytic
/// optimum and direct-minimizer agreement.
std::vector<ValidationCheck> run_validation_suite(std::uint64_t seed = 42);

} // namespace symoc

#endif // SYMOC_ORACLE_HPP
