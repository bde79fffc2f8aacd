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

#ifndef SYMOC_TEST_SUPPORT_HPP
#define SYMOC_TEST_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>

#include "symoc/problem.hpp"
#include "symoc/tableau.hpp"

namespace symoc::testing {

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values)
    v[k++] = x;
  return v;
}

// x' = u in R^d with h = u.u / 2 and Phi = 0 unless overridden.
inline OcProblem integrator_problem(int d = 1) {
  OcProblem p;
  p.name = "integrator";
  p.state_dim = d;
  p.control_dim = d;
  p.dynamics = [](const Vector &, const Vector &u) { return u; };
  p.running_cost = [](const Vector &, const Vector &u) { return 0.5 * u.squaredNorm(); };
  p.end_cost = [](const Vector &) { return 0.0; };
  return p;
}

// f = 0, h = c, Phi = |x|^2 / 2.
inline OcProblem frozen_problem(int d, int m, double c) {
  OcProblem p;
  p.name = "frozen";
  p.state_dim = d;
  p.control_dim = m;
  p.dynamics = [d](const Vector &, const Vector &) { return Vector(Vector::Zero(d)); };
  p.running_cost = [c](const Vector &, const Vector &) { return c; };
  p.end_cost = [](const Vector &x) { return 0.5 * x.squaredNorm(); };
  return p;
}

// Consistent tableau with strictly positive weights.
inline std::pair<Matrix, Vector> random_tableau(std::mt19937_64 &rng, int s) {
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  Vector b(s);
  for (int i = 0; i < s; ++i)
    b[i] = weight(rng);
  b /= b.sum();
  Matrix A(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      A(i, j) = entry(rng);
  return {A, b};
}

// Central differences, written out here so tests do not lean on the library's helpers.
inline Vector central_gradient(const std::function<double(const Vector &)> &fn, const Vector &at,
                               double h = 1e-6) {
  Vector g(at.size());
  Vector probe = at;
  for (Eigen::Index k = 0; k < at.size(); ++k) {
    const double step = h * (1.0 + std::abs(at[k]));
    probe[k] = at[k] + step;
    const double up = fn(probe);
    probe[k] = at[k] - step;
    const double down = fn(probe);
    probe[k] = at[k];
    g[k] = (up - down) / (2.0 * step);
  }
  return g;
}

inline double rel_diff(const Vector &a, const Vector &b) {
  const double scale = std::max({a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>(), 1e-300});
  return (a - b).lpNorm<Eigen::Infinity>() / scale;
}

} // namespace symoc::testing

#endif // SYMOC_TEST_SUPPORT_HPP
