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

// Stationary points of the two-segment model.
//
// Under the continuous rarest-first controller the stationarity conditions
// reduce to x_s = (lambda_l + lambda_s) / delta, x_l and x_a as rational
// functions of x_b, and a polynomial condition in x_b that factors into a
// quadratic (the on-diagonal point) and a quartic (off-diagonal points). The
// quartic has real roots exactly when lambda_s lies outside an interval
// (lambda0, lambda1) that depends only on beta, gamma, eta = lambda_l / delta
// and xi = delta / lambda_s.

#ifndef SWARM_EQUILIBRIUM_HPP_
#define SWARM_EQUILIBRIUM_HPP_

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "swarm/model.hpp"
#include "swarm/quartic.hpp"

namespace swarm {

// Stationary point under the constant control u = 1/2.
SwarmState half_control_equilibrium(const SwarmParams& p);

// Stationary point under u = 1 on the face x_b = 0.
SwarmState u1_equilibrium(const SwarmParams& p);

struct LeecherSeeder {
  double x_l = 0.0;
  double x_s = 0.0;
};

// (x_l, x_s) that make the leecher and seeder equations stationary for the
// given partial holders. Throws Error(kSingularDenominator) when
// beta (x_a + x_b) is within 1e-12 (relative) of delta.
LeecherSeeder xl_xs_from_xab(const SwarmParams& p, double x_a, double x_b);

// x_a solving xdot_a + xdot_b = 0 for a given x_b.
double xa_from_xb(const SwarmParams& p, double x_b);

// 2 gamma delta x^2 + 2 beta (lambda_l + lambda_s) x - lambda_l delta.
double equilibrium_quadratic(const SwarmParams& p, double x);

// The unique positive root of equilibrium_quadratic.
double quad_positive_root(const SwarmParams& p);

// Coefficients a0..a4 of the off-diagonal quartic in x_b.
QuarticCoeffs quartic_coeffs(const SwarmParams& p);

// Dimensionless form used for the discriminant bounds.
struct DiscriminantParams {
  double beta = 0.0;
  double gamma = 0.0;
  double eta = 0.0;  // lambda_l / delta
  double xi = 0.0;   // delta / lambda_s

  static DiscriminantParams from(const SwarmParams& p);
  // The bounds are derived for lambda_l >= delta >= lambda_s.
  bool in_regime() const { return eta >= 1.0 && xi >= 1.0; }
  // Swarm parameters with the given lambda_s and eta, xi held fixed.
  SwarmParams swarm_params(double lambda_s) const;
};

struct LambdaBounds {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  bool in_regime = true;
};

LambdaBounds discriminant_lambda_bounds(const DiscriminantParams& d);

// Midpoint of (lambda0, lambda1).
double discriminant_lambda_midpoint(const DiscriminantParams& d);

// The factor of the quartic discriminant that carries its sign: a concave
// quadratic in lambda_s (eta, xi fixed) vanishing at lambda0 and lambda1.
// With lambda_l = eta xi lambda_s and delta = xi lambda_s,
//   Delta = eta gamma^6 lambda_s^19 xi^3 S1^2 S2^2 L / 64,
// where S1 and S2 are the polynomials returned by discriminant_square_factors.
double discriminant_sign_factor(const DiscriminantParams& d, double lambda_s);
std::array<double, 2> discriminant_square_factors(const DiscriminantParams& d,
                                                  double lambda_s);

struct Stability {
  std::array<std::complex<double>, 4> eigenvalues{};
  std::string label;  // "stable", "unstable", "saddle" or "marginal"
};

// Eigenvalues of the Jacobian (central finite differences) of the closed-loop
// two-segment system at `s`.
Stability closed_loop_stability(const SwarmParams& p, const ControlPolicy& policy,
                                const SwarmState& s);

struct EquilibriumPoint {
  SwarmState state;
  double rhs_norm = 0.0;  // closed-loop max-norm residual
  double sojourn = 0.0;   // Little's law leecher-to-seeder time
  Stability stability;
};

struct EquilibriumSet {
  EquilibriumPoint on_diagonal;
  std::vector<EquilibriumPoint> off_diagonal;  // mirror pairs, x_a descending
  QuarticInvariants invariants;
  RootClass classification = RootClass::kNoRealRoots;
  std::vector<double> quartic_roots;
};

// Membership threshold for stationary points (absolute, population/time).
inline constexpr double kEquilibriumTolerance = 1e-8;

// All stationary points under the continuous rarest-first controller.
EquilibriumSet continuous_control_equilibria(const SwarmParams& p);

// (x_l + x_a + x_b) / lambda_l.
double littles_sojourn(const SwarmState& s, double lambda_l);

}  // namespace swarm

#endif  // SWARM_EQUILIBRIUM_HPP_
