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

#include "symoc/anderson.hpp"

#include <algorithm>
#include <cmath>

namespace symoc {

void AndersonConfig::validate() const {
  if (window < 1)
    throw ConfigError("acceleration: window must be >= 1");
  if (restart_every < 1)
    throw ConfigError("acceleration: restart_every must be >= 1");
  if (!(regularization >= 0.0))
    throw ConfigError("acceleration: regularization must be >= 0");
}

std::optional<Vector> anderson_combination(const std::deque<AndersonPair> &history,
                                           const AndersonConfig &cfg) {
  if (history.empty())
    return std::nullopt;
  const std::size_t used = std::min<std::size_t>(history.size(), cfg.window);
  const std::size_t first = history.size() - used;
  const Vector &f_last = history.back().second;
  if (used == 1)
    return f_last;

  const Eigen::Index dim = f_last.size();
  const Eigen::Index cols = static_cast<Eigen::Index>(used) - 1;
  Matrix dR(dim, cols);
  Matrix dF(dim, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const AndersonPair &a = history[first + j];
    const AndersonPair &b = history[first + j + 1];
    dR.col(j) = (b.second - b.first) - (a.second - a.first);
    dF.col(j) = b.second - a.second;
  }
  const Vector r_last = history.back().second - history.back().first;

  Matrix normal = dR.transpose() * dR;
  const double scale = normal.diagonal().maxCoeff();
  if (!(scale > 0.0) || !std::isfinite(scale))
    return std::nullopt;
  normal.diagonal().array() += cfg.regularization * scale;
  Eigen::LDLT<Matrix> ldlt(normal);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    return std::nullopt;
  const Vector gamma = ldlt.solve(dR.transpose() * r_last);
  if (!gamma.allFinite())
    return std::nullopt;
  return Vector(f_last - dF * gamma);
}

AndersonMixer::AndersonMixer(AndersonConfig cfg) : cfg_(cfg) { cfg_.validate(); }

void AndersonMixer::reset() {
  history_.clear();
  steps_since_restart_ = 0;
}

Vector AndersonMixer::step(const Vector &u, const Vector &Fu) {
  history_.emplace_back(u, Fu);
  while (history_.size() > static_cast<std::size_t>(cfg_.window))
    history_.pop_front();

  std::optional<Vector> next = anderson_combination(history_, cfg_);
  if (!next) {
    ++fallbacks_;
    reset();
    return Fu;
  }
  if (history_.size() > 1 && ++steps_since_restart_ >= cfg_.restart_every)
    reset();
  return *next;
}

IterationResult run_accelerated(const OcProblem &problem, const ButcherPair &pair,
                                const Vector &xi, const ControlGrid &u0, double horizon,
                                const RegularizationConfig &reg, const AndersonConfig &cfg,
                                const StageSolveConfig &stage) {
  problem.validate();
  reg.validate();
  cfg.validate();
  stage.validate();
  if (u0.stages() != pair.s || u0.control_dim() != problem.control_dim)
    throw DimensionError("initial control does not match tableau stages / control dimension");

  const SweepContext ctx{problem, pair, xi, horizon, stage};
  SweepState state = evaluate_control(ctx, project_controls(problem, u0));
  AndersonMixer mixer(cfg);

  IterationResult result;
  result.report.initial_cost = state.cost;
  result.report.warnings = state.traj.warnings;
  for (int k = 1; k <= reg.max_outer_iters; ++k) {
    ControlUpdate update = regularized_update(ctx, state, reg);
    const double residual = control_update_norm(update.next, state.u);
    ControlGrid next = std::move(update.next);
    if (cfg.enabled && residual >= reg.epsilon) {
      Vector mixed = mixer.step(state.u.values(), next.values());
      next = project_controls(problem, ControlGrid(next.steps(), next.stages(),
                                                   next.control_dim(), std::move(mixed)));
    }
    state = evaluate_control(ctx, std::move(next));
    result.report.records.push_back(
        {k, state.cost, residual, update.hbar_gain, update.max_penalty});
    if (residual < reg.epsilon) {
      result.report.termination = Termination::tolerance;
      break;
    }
  }
  result.control = std::move(state.u);
  result.trajectory = std::move(state.traj);
  result.cost = state.cost;
  return result;
}

} // namespace symoc
