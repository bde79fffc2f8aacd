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

#ifndef SYMOC_OUTPUT_HPP
#define SYMOC_OUTPUT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>

#include "symoc/run_config.hpp"

namespace symoc {

/// Plain or Anderson-accelerated iteration, as the config asks.
IterationResult execute_run(const RunConfig &cfg);

/// Full-precision (17 significant digits) decimal rendering.
std::string format_double(double value);

/// iter,J,update_norm,hbar_gain,max_penalty
void write_convergence_csv(std::ostream &out, const SweepReport &report);

/// n,t,x_*,lambda_*,U_*[,E]; control cells are blank on the final row.
void write_trajectory_csv(std::ostream &out, const OcProblem &problem,
                          const TrajectoryPair &traj, const ControlGrid &u);

nlohmann::json run_summary(const RunConfig &cfg, const IterationResult &result);

/// Writes convergence.csv, trajectory.csv and summary.json into dir.
void write_run_outputs(const std::filesystem::path &dir, const RunConfig &cfg,
                       const IterationResult &result);

/// max over the grid points of `coarse` of |coarse - fine| in one state
/// component, the finer path linearly interpolated in time.
double path_deviation(const TrajectoryPair &coarse, const TrajectoryPair &fine, int component);

} // namespace symoc

#endif // SYMOC_OUTPUT_HPP
