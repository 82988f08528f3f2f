// Copyright 2026 The Swarm Dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swarm/quartic.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>

#include "swarm/error.hpp"

namespace swarm {

std::string_view to_string(RootClass c) {
  return c == RootClass::kNoRealRoots ? "no-real-roots" : "real-roots-exist";
}

RootClass QuarticInvariants::classify() const {
  const auto& [c0, c1, c2, c3, c4] = c;
  const double d = 12.0 * H * H - c4 * c4 * I;
  // Invariants that vanish up to rounding count as zero.
  constexpr double kEps = 1e-12;
  const double i_scale = std::abs(c4 * c0) + 4.0 * std::abs(c3 * c1) + 3.0 * c2 * c2;
  const double h_scale = std::abs(c4 * c2) + c3 * c3;
  const double delta_scale = std::abs(I * I * I) + 27.0 * J * J;
  const double g_scale = std::abs(c4 * c4 * c1) + 3.0 * std::abs(c4 * c3 * c2) +
                         2.0 * std::abs(c3 * c3 * c3);
  const double d_scale = 12.0 * H * H + c4 * c4 * i_scale;
  const bool delta_zero = std::abs(Delta) <= kEps * delta_scale;
  if (!delta_zero && Delta > 0.0) {
    return (H >= 0.0 || d < 0.0) ? RootClass::kNoRealRoots : RootClass::kRealRootsExist;
  }
  if (delta_zero && std::abs(G) <= kEps * g_scale && std::abs(d) <= kEps * d_scale &&
      H > kEps * h_scale) {
    return RootClass::kNoRealRoots;
  }
  return RootClass::kRealRootsExist;
}

QuarticInvariants quartic_invariants(const QuarticCoeffs& a) {
  if (a[4] == 0.0) throw Error(ErrorKind::kDegenerateQuartic, "leading coefficient is zero");
  QuarticInvariants q;
  q.c = {a[0], a[1] / 4.0, a[2] / 6.0, a[3] / 4.0, a[4]};
  const auto& [c0, c1, c2, c3, c4] = q.c;
  q.G = c4 * c4 * c1 - 3.0 * c4 * c3 * c2 + 2.0 * c3 * c3 * c3;
  q.H = c4 * c2 - c3 * c3;
  q.I = c4 * c0 - 4.0 * c3 * c1 + 3.0 * c2 * c2;
  q.J = c4 * (c2 * c0 - c1 * c1) - c3 * (c3 * c0 - c1 * c2) + c2 * (c3 * c1 - c2 * c2);
  q.Delta = q.I * q.I * q.I - 27.0 * q.J * q.J;
  return q;
}

double evaluate_quartic(const QuarticCoeffs& a, double x) {
  return (((a[4] * x + a[3]) * x + a[2]) * x + a[1]) * x + a[0];
}

namespace {

double derivative(const QuarticCoeffs& a, double x) {
  return ((4.0 * a[4] * x + 3.0 * a[3]) * x + 2.0 * a[2]) * x + a[1];
}

// Sum of |a_i x^i|, the natural scale of a rounding error in f(x).
double magnitude(const QuarticCoeffs& a, double x) {
  const double ax = std::abs(x);
  return (((std::abs(a[4]) * ax + std::abs(a[3])) * ax + std::abs(a[2])) * ax +
          std::abs(a[1])) * ax + std::abs(a[0]);
}

double polish(const QuarticCoeffs& a, double x) {
  for (int it = 0; it < 60; ++it) {
    const double f = evaluate_quartic(a, x);
    const double df = derivative(a, x);
    if (f == 0.0 || df == 0.0) break;
    const double next = x - f / df;
    if (!std::isfinite(next)) break;
    // Stop once Newton no longer reduces the residual.
    if (std::abs(evaluate_quartic(a, next)) >= std::abs(f)) break;
    x = next;
  }
  return x;
}

}  // namespace

std::vector<double> solve_quartic(const QuarticCoeffs& a) {
  if (a[4] == 0.0) throw Error(ErrorKind::kDegenerateQuartic, "leading coefficient is zero");

  // Substitute x = s y so the monic coefficients are of comparable size.
  double s = 1.0;
  if (a[0] != 0.0) s = std::pow(std::abs(a[0] / a[4]), 0.25);
  if (!(s > 0.0 && std::isfinite(s))) s = 1.0;

  Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
  for (int i = 1; i < 4; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < 4; ++i) {
    companion(i, 3) = -a[i] * std::pow(s, i) / (a[4] * std::pow(s, 4));
  }
  Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, /*computeEigenvectors=*/false);
  const auto eig = solver.eigenvalues();

  std::vector<double> roots;
  for (int i = 0; i < 4; ++i) {
    const std::complex<double> z = eig(i);
    if (std::abs(z.imag()) > 1e-7 * (1.0 + std::abs(z))) continue;
    const double x = polish(a, s * z.real());
    if (std::abs(evaluate_quartic(a, x)) <= 1e-10 * magnitude(a, x)) roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> distinct;
  for (double r : roots) {
    if (distinct.empty() || std::abs(r - distinct.back()) > 1e-9 * (1.0 + std::abs(r))) {
      distinct.push_back(r);
    }
  }
  return distinct;
}

}  // namespace swarm
