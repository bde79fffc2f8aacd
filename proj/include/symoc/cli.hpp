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

#ifndef SYMOC_CLI_HPP
#define SYMOC_CLI_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "symoc/run_config.hpp"

namespace symoc {

enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_numerical = 2, exit_check_failed = 3 };

/// SYMOC_OUTPUT_DIR if set and non-empty, else output.dir from the config.
std::filesystem::path resolve_output_dir(const RunConfig &cfg);

int cmd_run(const std::string &config_path, std::ostream &out, std::ostream &err);

/// One rho_<value>/ directory per entry plus scan.csv (rho,iter,J).
int cmd_scan_rho(const std::string &config_path, const std::vector<double> &rhos,
                 std::ostream &out, std::ostream &err);

/// Runs both configs into a/ and b/ under the first config's output
/// directory and writes comparison.json.
int cmd_compare(const std::string &config_a, const std::string &config_b, std::ostream &out,
                std::ostream &err);

int cmd_validate(std::ostream &out, std::ostream &err);

/// "50,100,200" -> {50, 100, 200}. Throws ConfigError on junk.
std::vector<double> parse_rho_list(const std::string &text);

} // namespace symoc

#endif // SYMOC_CLI_HPP
