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

#include "symoc/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace symoc {

IterationResult execute_run(const RunConfig &cfg) {
  const OcProblem problem = cfg.make_problem();
  if (cfg.acceleration.enabled)
    return run_accelerated(problem, cfg.tableau, cfg.initial_state(), cfg.initial_control_grid(),
                           cfg.horizon, cfg.regularization, cfg.acceleration, cfg.stage);
  return run_iteration(problem, cfg.tableau, cfg.initial_state(), cfg.initial_control_grid(),
                       cfg.horizon, cfg.regularization, cfg.stage);
}

std::string format_double(double value) {
  if (value == 0.0)
    value = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_convergence_csv(std::ostream &out, const SweepReport &report) {
  out << "iter,J,update_norm,hbar_gain,max_penalty\n";
  for (const IterationRecord &r : report.records)
    out << r.iter << ',' << format_double(r.cost) << ',' << format_double(r.update_norm) << ','
        << format_double(r.hbar_gain) << ',' << format_double(r.max_penalty) << '\n';
}

void write_trajectory_csv(std::ostream &out, const OcProblem &problem,
                          const TrajectoryPair &traj, const ControlGrid &u) {
  const int d = problem.state_dim;
  const int m = problem.control_dim;
  out << "n,t";
  for (int k = 1; k <= d; ++k)
    out << ",x_" << k;
  for (int k = 1; k <= d; ++k)
    out << ",lambda_" << k;
  for (int i = 1; i <= u.stages(); ++i)
    for (int j = 1; j <= m; ++j) {
      out << ",U_" << i;
      if (m > 1)
        out << '_' << j;
    }
  if (problem.energy)
    out << ",E";
  out << '\n';

  for (int n = 0; n <= traj.steps; ++n) {
    out << n << ',' << format_double(traj.time(n));
    for (int k = 0; k < d; ++k)
      out << ',' << format_double(traj.x[n][k]);
    for (int k = 0; k < d; ++k)
      out << ',' << (traj.has_adjoint ? format_double(traj.lambda[n][k]) : "");
    for (int k = 0; k < u.step_size(); ++k) {
      out << ',';
      if (n < traj.steps)
        out << format_double(u.step(n)[k]);
    }
    if (problem.energy)
      out << ',' << format_double(problem.energy(traj.x[n]));
    out << '\n';
  }
}

nlohmann::json run_summary(const RunConfig &cfg, const IterationResult &result) {
  nlohmann::json summary;
  summary["problem"] = cfg.problem_name;
  summary["tableau"] = tableau_to_json(cfg.tableau);
  summary["N"] = cfg.steps;
  summary["T"] = cfg.horizon;
  summary["rho"] = cfg.regularization.rho;
  summary["accelerated"] = cfg.acceleration.enabled;
  summary["initial_J"] = result.report.initial_cost;
  summary["final_J"] = result.cost;
  summary["iterations"] = result.report.iterations();
  summary["termination"] = to_string(result.report.termination);
  summary["converged"] = result.report.converged();
  summary["warnings"] = result.report.warnings;
  summary["config"] = cfg.source;
  return summary;
}

void write_run_outputs(const std::filesystem::path &dir, const RunConfig &cfg,
                       const IterationResult &result) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char *name) {
    std::ofstream out(dir / name);
    if (!out)
      throw Error("cannot write " + (dir / name).string());
    return out;
  };
  {
    auto out = open("convergence.csv");
    write_convergence_csv(out, result.report);
  }
  {
    auto out = open("trajectory.csv");
    write_trajectory_csv(out, cfg.make_problem(), result.trajectory, result.control);
  }
  {
    auto out = open("summary.json");
    out << run_summary(cfg, result).dump(2) << '\n';
  }
}

double path_deviation(const TrajectoryPair &coarse, const TrajectoryPair &fine, int component) {
  double worst = 0.0;
  for (int n = 0; n <= coarse.steps; ++n) {
    const double t = coarse.time(n);
    const double pos = t / fine.tau;
    const int left = std::clamp(static_cast<int>(std::floor(pos)), 0, fine.steps - 1);
    const double w = std::clamp(pos - left, 0.0, 1.0);
    const double interp =
        (1.0 - w) * fine.x[left][component] + w * fine.x[left + 1][component];
    worst = std::max(worst, std::abs(coarse.x[n][component] - interp));
  }
  return worst;
}

} // namespace symoc
