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

#ifndef SYMOC_TYPES_HPP
#define SYMOC_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace symoc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Grid/problem shape disagreement.
class DimensionError : public Error {
public:
  using Error::Error;
};

/// Rejected Butcher data (non-positive or inconsistent weights, bad shape).
class TableauError : public Error {
public:
  using Error::Error;
};

/// Invalid run configuration or parameter block.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Implicit stage equations did not reach the residual tolerance.
class StageDivergence : public Error {
public:
  StageDivergence(int step, const std::string &what)
      : Error("stage divergence at step " + std::to_string(step) + ": " + what),
        step_(step) {}
  int step() const { return step_; }

private:
  int step_;
};

/// Singular linear system for the stage sensitivities.
class PsiSolveFailure : public Error {
public:
  using Error::Error;
};

} // namespace symoc

#endif // SYMOC_TYPES_HPP
