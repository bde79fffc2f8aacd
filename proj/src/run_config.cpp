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

#include "symoc/run_config.hpp"

#include <fstream>
#include <set>

namespace symoc {

using nlohmann::json;

namespace {

void reject_unknown(const json &block, const std::string &where,
                    const std::set<std::string> &allowed) {
  if (!block.is_object())
    throw ConfigError("'" + where + "' must be an object");
  for (const auto &[key, _] : block.items())
    if (!allowed.count(key))
      throw ConfigError("unknown key '" + key + "' in '" + where + "'");
}

template <typename T> T get_or(const json &block, const char *key, T fallback) {
  if (!block.contains(key))
    return fallback;
  try {
    return block.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

Vector vector_from(const json &arr, const std::string &what) {
  if (!arr.is_array())
    throw ConfigError("'" + what + "' must be an array of numbers");
  Vector v(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (!arr[k].is_number())
      throw ConfigError("'" + what + "' must be an array of numbers");
    v[k] = arr[k].get<double>();
  }
  return v;
}

json vector_to(const Vector &v) {
  json arr = json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k)
    arr.push_back(v[k]);
  return arr;
}

MaximizerConfig parse_maximizer(const json &block) {
  reject_unknown(block, "regularization.maximizer",
                 {"type", "max_steps", "grad_tol", "backtrack", "max_backtracks", "armijo",
                  "initial_step"});
  MaximizerConfig m;
  const std::string type = get_or<std::string>(block, "type", "closed_form");
  if (type == "closed_form")
    m.kind = MaximizerConfig::Kind::closed_form;
  else if (type == "gradient_ascent")
    m.kind = MaximizerConfig::Kind::gradient_ascent;
  else
    throw ConfigError("unknown maximizer type '" + type + "'");
  m.max_steps = get_or(block, "max_steps", m.max_steps);
  m.grad_tol = get_or(block, "grad_tol", m.grad_tol);
  m.backtrack = get_or(block, "backtrack", m.backtrack);
  m.max_backtracks = get_or(block, "max_backtracks", m.max_backtracks);
  m.armijo = get_or(block, "armijo", m.armijo);
  m.initial_step = get_or(block, "initial_step", m.initial_step);
  return m;
}

} // namespace

ButcherPair tableau_from_json(const json &doc) {
  if (!doc.is_object())
    throw ConfigError("'tableau' must be an object");
  if (doc.contains("name") && !doc.contains("A") && !doc.contains("b")) {
    reject_unknown(doc, "tableau", {"name"});
    return named_tableau(doc.at("name").get<std::string>());
  }
  reject_unknown(doc, "tableau", {"name", "s", "A", "b"});
  if (!doc.contains("A") || !doc.contains("b"))
    throw ConfigError("'tableau' needs either a name or both A and b");
  const Vector b = vector_from(doc.at("b"), "tableau.b");
  const json &rows = doc.at("A");
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(b.size()))
    throw TableauError("tableau.A must have len(b) rows");
  Matrix A(b.size(), b.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Vector row = vector_from(rows[i], "tableau.A");
    if (row.size() != b.size())
      throw TableauError("tableau.A must be square");
    A.row(i) = row.transpose();
  }
  if (doc.contains("s") && doc.at("s").get<int>() != b.size())
    throw TableauError("tableau.s disagrees with len(b)");
  return make_adjoint_pair(A, b, doc.value("name", std::string("custom")));
}

json tableau_to_json(const ButcherPair &pair) {
  json rows = json::array();
  for (int i = 0; i < pair.s; ++i)
    rows.push_back(vector_to(pair.A.row(i).transpose()));
  return {{"name", pair.name}, {"s", pair.s}, {"A", rows}, {"b", vector_to(pair.b)}};
}

RunConfig parse_run_config(const json &doc) {
  reject_unknown(doc, "config",
                 {"problem", "tableau", "grid", "regularization", "acceleration",
                  "stage_solver", "initial_control", "output", "seed"});
  for (const char *required : {"problem", "tableau", "grid"})
    if (!doc.contains(required))
      throw ConfigError(std::string("missing block '") + required + "'");

  RunConfig cfg;
  cfg.source = doc;

  const json &grid = doc.at("grid");
  reject_unknown(grid, "grid", {"N", "T"});
  cfg.steps = get_or(grid, "N", 0);
  cfg.horizon = get_or(grid, "T", 0.0);
  if (cfg.steps < 1)
    throw ConfigError("grid.N must be a positive integer");
  if (!(cfg.horizon > 0.0))
    throw ConfigError("grid.T must be positive");

  const json &problem = doc.at("problem");
  if (!problem.is_object() || !problem.contains("name"))
    throw ConfigError("'problem' needs a name");
  cfg.problem_name = problem.at("name").get<std::string>();
  if (cfg.problem_name == "double-well") {
    reject_unknown(problem, "problem", {"name", "nu", "alpha", "target", "initial_state"});
    DoubleWellParams &p = cfg.double_well;
    p.nu = get_or(problem, "nu", p.nu);
    p.alpha = get_or(problem, "alpha", p.alpha);
    if (problem.contains("target"))
      p.target = vector_from(problem.at("target"), "problem.target");
    if (problem.contains("initial_state"))
      p.initial_state = vector_from(problem.at("initial_state"), "problem.initial_state");
    p.horizon = cfg.horizon;
    p.validate();
  } else if (cfg.problem_name == "lq") {
    reject_unknown(problem, "problem", {"name", "xi", "a"});
    cfg.lq.xi = get_or(problem, "xi", cfg.lq.xi);
    cfg.lq.a = get_or(problem, "a", cfg.lq.a);
    cfg.lq.horizon = cfg.horizon;
    cfg.lq.validate();
  } else {
    throw ConfigError("unknown problem '" + cfg.problem_name + "'");
  }

  cfg.tableau = tableau_from_json(doc.at("tableau"));

  if (doc.contains("regularization")) {
    const json &reg = doc.at("regularization");
    reject_unknown(reg, "regularization",
                   {"rho", "epsilon", "max_outer_iters", "maximizer", "threads"});
    RegularizationConfig &r = cfg.regularization;
    r.rho = get_or(reg, "rho", r.rho);
    r.epsilon = get_or(reg, "epsilon", r.epsilon);
    r.max_outer_iters = get_or(reg, "max_outer_iters", r.max_outer_iters);
    r.threads = get_or(reg, "threads", r.threads);
    if (reg.contains("maximizer"))
      r.maximizer = parse_maximizer(reg.at("maximizer"));
  }
  cfg.regularization.validate();

  if (doc.contains("acceleration")) {
    const json &acc = doc.at("acceleration");
    reject_unknown(acc, "acceleration", {"enabled", "window", "restart_every", "regularization"});
    AndersonConfig &a = cfg.acceleration;
    a.enabled = get_or(acc, "enabled", a.enabled);
    a.window = get_or(acc, "window", a.window);
    a.restart_every = get_or(acc, "restart_every", a.restart_every);
    a.regularization = get_or(acc, "regularization", a.regularization);
  }
  cfg.acceleration.validate();

  if (doc.contains("stage_solver")) {
    const json &st = doc.at("stage_solver");
    reject_unknown(st, "stage_solver", {"method", "max_inner_iters", "residual_tol", "damping"});
    StageSolveConfig &s = cfg.stage;
    const std::string method = get_or<std::string>(st, "method", "fixed_point");
    if (method == "fixed_point")
      s.method = StageMethod::fixed_point;
    else if (method == "newton")
      s.method = StageMethod::newton;
    else
      throw ConfigError("unknown stage_solver.method '" + method + "'");
    s.max_inner_iters = get_or(st, "max_inner_iters", s.max_inner_iters);
    s.residual_tol = get_or(st, "residual_tol", s.residual_tol);
    s.damping = get_or(st, "damping", s.damping);
  }
  cfg.stage.validate();

  const int control_dim = cfg.make_problem().control_dim;
  const Eigen::Index total = static_cast<Eigen::Index>(cfg.steps) * cfg.tableau.s * control_dim;
  if (doc.contains("initial_control")) {
    const json &u0 = doc.at("initial_control");
    if (u0.is_number())
      cfg.initial_control = Vector::Constant(total, u0.get<double>());
    else
      cfg.initial_control = vector_from(u0, "initial_control");
    if (cfg.initial_control.size() != total)
      throw ConfigError("initial_control must hold N*s*m = " + std::to_string(total) +
                        " values");
  }

  if (doc.contains("output")) {
    reject_unknown(doc.at("output"), "output", {"dir"});
    cfg.output_dir = get_or<std::string>(doc.at("output"), "dir", cfg.output_dir);
  }
  cfg.seed = get_or<std::uint64_t>(doc, "seed", cfg.seed);
  return cfg;
}

RunConfig load_run_config(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(doc);
}

OcProblem RunConfig::make_problem() const {
  if (problem_name == "lq")
    return make_lq(lq);
  return make_double_well(double_well);
}

Vector RunConfig::initial_state() const {
  if (problem_name == "lq")
    return Vector::Constant(1, lq.xi);
  return double_well.initial_state;
}

ControlGrid RunConfig::initial_control_grid() const {
  const int m = make_problem().control_dim;
  if (initial_control.size() == 0)
    return ControlGrid(steps, tableau.s, m);
  return ControlGrid(steps, tableau.s, m, initial_control);
}

} // namespace symoc
