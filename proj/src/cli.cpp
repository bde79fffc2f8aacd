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

#include "symoc/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "symoc/oracle.hpp"
#include "symoc/output.hpp"

namespace symoc {

namespace {

template <class Fn> int guarded(std::ostream &err, Fn &&fn) {
  try {
    return fn();
  } catch (const StageDivergence &e) {
    err << "error: stage solver diverged at step " << e.step() << ": " << e.what() << '\n';
    return exit_numerical;
  } catch (const PsiSolveFailure &e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  } catch (const nlohmann::json::exception &e) {
    err << "error: malformed config: " << e.what() << '\n';
    return exit_usage;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::filesystem::filesystem_error &e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
}

void report_run(std::ostream &out, const std::filesystem::path &dir,
                const IterationResult &result) {
  out << "J = " << format_double(result.cost) << "  iterations = "
      << result.report.iterations() << "  termination = "
      << to_string(result.report.termination) << "  -> " << dir.string() << '\n';
  for (const std::string &w : result.report.warnings)
    out << "warning: " << w << '\n';
}

std::string rho_label(double rho) {
  std::ostringstream s;
  s << rho;
  return s.str();
}

} // namespace

std::filesystem::path resolve_output_dir(const RunConfig &cfg) {
  const char *env = std::getenv("SYMOC_OUTPUT_DIR");
  if (env != nullptr && *env != '\0')
    return env;
  return cfg.output_dir;
}

int cmd_run(const std::string &config_path, std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_run_config(config_path);
    const std::filesystem::path dir = resolve_output_dir(cfg);
    const IterationResult result = execute_run(cfg);
    write_run_outputs(dir, cfg, result);
    report_run(out, dir, result);
    return static_cast<int>(exit_ok);
  });
}

std::vector<double> parse_rho_list(const std::string &text) {
  std::vector<double> rhos;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty())
      throw ConfigError("empty entry in rho list '" + text + "'");
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(item, &used);
    } catch (const std::exception &) {
      throw ConfigError("bad rho value '" + item + "'");
    }
    if (used != item.size() || !(value >= 0.0))
      throw ConfigError("bad rho value '" + item + "'");
    rhos.push_back(value);
  }
  return rhos;
}

int cmd_scan_rho(const std::string &config_path, const std::vector<double> &rhos,
                 std::ostream &out, std::ostream &err) {
  if (rhos.empty()) {
    err << "error: scan-rho needs at least one rho value\n";
    return exit_usage;
  }
  return guarded(err, [&] {
    const RunConfig base = load_run_config(config_path);
    const std::filesystem::path root = resolve_output_dir(base);
    std::filesystem::create_directories(root);
    std::ofstream scan(root / "scan.csv");
    if (!scan)
      throw Error("cannot write " + (root / "scan.csv").string());
    scan << "rho,iter,J\n";
    for (double rho : rhos) {
      RunConfig cfg = base;
      cfg.regularization.rho = rho;
      cfg.regularization.validate();
      const std::filesystem::path dir = root / ("rho_" + rho_label(rho));
      const IterationResult result = execute_run(cfg);
      write_run_outputs(dir, cfg, result);
      const std::string r = format_double(rho);
      scan << r << ",0," << format_double(result.report.initial_cost) << '\n';
      for (const IterationRecord &rec : result.report.records)
        scan << r << ',' << rec.iter << ',' << format_double(rec.cost) << '\n';
      out << "rho = " << rho_label(rho) << ": ";
      report_run(out, dir, result);
    }
    return static_cast<int>(exit_ok);
  });
}

int cmd_compare(const std::string &config_a, const std::string &config_b, std::ostream &out,
                std::ostream &err) {
  return guarded(err, [&] {
    const RunConfig a = load_run_config(config_a);
    const RunConfig b = load_run_config(config_b);
    if (a.problem_name != b.problem_name)
      throw ConfigError("compare needs both configs on the same problem");
    const std::filesystem::path root = resolve_output_dir(a);
    const IterationResult ra = execute_run(a);
    const IterationResult rb = execute_run(b);
    write_run_outputs(root / "a", a, ra);
    write_run_outputs(root / "b", b, rb);

    const bool a_coarse = ra.trajectory.steps <= rb.trajectory.steps;
    const TrajectoryPair &coarse = a_coarse ? ra.trajectory : rb.trajectory;
    const TrajectoryPair &fine = a_coarse ? rb.trajectory : ra.trajectory;

    nlohmann::json cmp;
    cmp["J_a"] = ra.cost;
    cmp["J_b"] = rb.cost;
    cmp["J_difference"] = ra.cost - rb.cost;
    cmp["iterations_a"] = ra.report.iterations();
    cmp["iterations_b"] = rb.report.iterations();
    cmp["converged_a"] = ra.report.converged();
    cmp["converged_b"] = rb.report.converged();
    nlohmann::json dev = nlohmann::json::array();
    for (int k = 0; k < coarse.x[0].size(); ++k)
      dev.push_back(path_deviation(coarse, fine, k));
    cmp["max_state_deviation"] = dev;
    {
      std::ofstream f(root / "comparison.json");
      if (!f)
        throw Error("cannot write " + (root / "comparison.json").string());
      f << cmp.dump(2) << '\n';
    }
    out << "a: ";
    report_run(out, root / "a", ra);
    out << "b: ";
    report_run(out, root / "b", rb);
    out << "max |x_1 difference| = " << format_double(dev[0].get<double>()) << '\n';
    return static_cast<int>(exit_ok);
  });
}

int cmd_validate(std::ostream &out, std::ostream &err) {
  return guarded(err, [&] {
    const std::vector<ValidationCheck> checks = run_validation_suite();
    bool all = true;
    for (const ValidationCheck &c : checks) {
      char line[256];
      std::snprintf(line, sizeof line, "%-4s  %-52s  %.3e  (tol %.1e)\n",
                    c.passed ? "PASS" : "FAIL", c.name.c_str(), c.value, c.tolerance);
      out << line;
      all = all && c.passed;
    }
    out << (all ? "all checks passed\n" : "some checks FAILED\n");
    return static_cast<int>(all ? exit_ok : exit_check_failed);
  });
}

} // namespace symoc
