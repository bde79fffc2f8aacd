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

#ifndef SYMOC_RUN_CONFIG_HPP
#define SYMOC_RUN_CONFIG_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "symoc/anderson.hpp"
#include "symoc/problems.hpp"

namespace symoc {

/// One experiment: problem, tableau, grid, iteration and output settings.
///
/// JSON layout:
///   { "problem": {"name": "double-well", "nu": 1, "alpha": 10,
///                 "target": [1, 0], "initial_state": [-1, 0]},
///     "tableau": {"name": "symplectic-euler"}  |  {"s": 1, "A": [[0]], "b": [1]},
///     "grid": {"N": 160, "T": 6},
///     "regularization": {"rho": 100, "epsilon": 1e-8, "max_outer_iters": 20000,
///                        "threads": 1,
///                        "maximizer": {"type": "closed_form" | "gradient_ascent", ...}},
///     "acceleration": {"enabled": false, "window": 3, "restart_every": 3},
///     "stage_solver": {"method": "fixed_point", "max_inner_iters": 100,
///                      "residual_tol": 1e-12, "damping": 1},
///     "initial_control": 0.0 | [...],
///     "output": {"dir": "out"},
///     "seed": 0 }
struct RunConfig {
  nlohmann::json source; ///< the document as given, echoed into summary.json

  std::string problem_name = "double-well";
  DoubleWellParams double_well;
  LqParams lq;

  ButcherPair tableau = symplectic_euler();
  int steps = 160;
  double horizon = 6.0;

  RegularizationConfig regularization;
  AndersonConfig acceleration{3, 3, 1e-12, false};
  StageSolveConfig stage;

  Vector initial_control; ///< empty means u0 = 0
  std::string output_dir = "output";
  std::uint64_t seed = 0;

  OcProblem make_problem() const;
  Vector initial_state() const;
  ControlGrid initial_control_grid() const;
};

/// Throws ConfigError on unknown keys, missing blocks or invalid values.
RunConfig parse_run_config(const nlohmann::json &doc);
RunConfig load_run_config(const std::string &path);

ButcherPair tableau_from_json(const nlohmann::json &doc);
nlohmann::json tableau_to_json(const ButcherPair &pair);

} // namespace symoc

#endif // SYMOC_RUN_CONFIG_HPP
