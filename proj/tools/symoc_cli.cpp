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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "symoc/cli.hpp"

int main(int argc, char **argv) {
  CLI::App app{"Regularized symplectic sweeps for optimal control"};
  app.require_subcommand(1);

  std::string run_config;
  auto *run = app.add_subcommand("run", "Solve one configured problem");
  run->add_option("config", run_config, "JSON config file")->required();

  std::string scan_config;
  std::string rhos = "50,100,200";
  auto *scan = app.add_subcommand("scan-rho", "Repeat a run over several rho values");
  scan->add_option("config", scan_config, "JSON config file")->required();
  scan->add_option("--rhos", rhos, "comma separated rho values")->capture_default_str();

  std::string cmp_a, cmp_b;
  auto *compare = app.add_subcommand("compare", "Run two configs and compare the results");
  compare->add_option("config_a", cmp_a, "first JSON config")->required();
  compare->add_option("config_b", cmp_b, "second JSON config")->required();

  auto *validate = app.add_subcommand("validate", "Run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : symoc::exit_usage;
  }

  if (*run)
    return symoc::cmd_run(run_config, std::cout, std::cerr);
  if (*scan) {
    std::vector<double> values;
    try {
      values = symoc::parse_rho_list(rhos);
    } catch (const symoc::Error &e) {
      std::cerr << "error: " << e.what() << '\n';
      return symoc::exit_usage;
    }
    return symoc::cmd_scan_rho(scan_config, values, std::cout, std::cerr);
  }
  if (*compare)
    return symoc::cmd_compare(cmp_a, cmp_b, std::cout, std::cerr);
  if (*validate)
    return symoc::cmd_validate(std::cout, std::cerr);
  return symoc::exit_usage;
}
