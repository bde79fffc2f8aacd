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

#ifndef SYMOC_ANDERSON_HPP
#define SYMOC_ANDERSON_HPP

#include <deque>
#include <optional>
#include <utility>

#include "symoc/regularized.hpp"

namespace symoc {

struct AndersonConfig {
  int window = 3;          ///< number of (u, F(u)) pairs combined
  int restart_every = 3;   ///< history is cleared after this many mixed steps
  double regularization = 1e-12;
  bool enabled = true;

  void validate() const;
};

/// One (u, F(u)) pair of the fixed-point history.
using AndersonPair = std::pair<Vector, Vector>;

/// Type-II Anderson combination sum_j alpha_j F(u_j), alpha minimizing
/// |sum_j alpha_j r_j| subject to sum_j alpha_j = 1, r_j = F(u_j) - u_j.
/// Only the newest `window` pairs are used. Returns nullopt when the
/// least-squares problem is degenerate.
std::optional<Vector> anderson_combination(const std::deque<AndersonPair> &history,
                                           const AndersonConfig &cfg);

/// Stateful mixer: keeps the history and applies hard restarts.
class AndersonMixer {
public:
  explicit AndersonMixer(AndersonConfig cfg);

  /// Records (u, F(u)) and returns the next iterate. Falls back to F(u) and
  /// restarts on a degenerate combination.
  Vector step(const Vector &u, const Vector &Fu);

  void reset();
  std::size_t history_size() const { return history_.size(); }
  int fallbacks() const { return fallbacks_; }

private:
  AndersonConfig cfg_;
  std::deque<AndersonPair> history_;
  int steps_since_restart_ = 0;
  int fallbacks_ = 0;
};

/// The regularized sweep iteration driven as a fixed point u <- F(u) with
/// Anderson acceleration. With cfg.enabled == false the iterates are those of
/// run_iteration. The reported update norm is the fixed-point residual
/// sum_n |F(u)_n - u_n|, and the stopping rule is that residual < epsilon.
IterationResult run_accelerated(const OcProblem &problem, const ButcherPair &pair,
                                const Vector &xi, const ControlGrid &u0, double horizon,
                                const RegularizationConfig &reg, const AndersonConfig &cfg,
                                const StageSolveConfig &stage = {});

} // namespace symoc

#endif // SYMOC_ANDERSON_HPP
