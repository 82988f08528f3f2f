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

#include "swarm/equilibrium.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "swarm/error.hpp"

namespace swarm {

SwarmState half_control_equilibrium(const SwarmParams& p) {
  const double inflow = p.lambda_l + p.lambda_s;
  const double kappa0 = p.beta * inflow / (p.gamma * p.delta);
  // Positive root of sigma^2 + 2 kappa0 sigma - 2 lambda_l / gamma, written
  // without cancellation.
  const double c = 2.0 * p.lambda_l / p.gamma;
  const double sigma0 = c / (kappa0 + std::sqrt(kappa0 * kappa0 + c));
  const double x_s = inflow / p.delta;
  const double x_l = p.lambda_l / (p.beta * (sigma0 + x_s));
  return {x_l, 0.5 * sigma0, 0.5 * sigma0, x_s};
}

SwarmState u1_equilibrium(const SwarmParams& p) {
  const double inflow = p.lambda_l + p.lambda_s;
  const double x_a = p.lambda_l * p.delta / (inflow * p.beta);
  // Seeder balance with x_b = 0: lambda_s + beta x_a x_s - delta x_s = 0.
  const double x_s = p.lambda_s / (p.delta - p.beta * x_a);
  const double x_l = p.lambda_l / (p.beta * (x_a + x_s));
  return {x_l, x_a, 0.0, x_s};
}

LeecherSeeder xl_xs_from_xab(const SwarmParams& p, double x_a, double x_b) {
  const double uptake = p.beta * (x_a + x_b);
  const double denom = uptake - p.delta;
  if (std::abs(denom) <= 1e-12 * std::max(std::abs(uptake), std::abs(p.delta))) {
    throw Error(ErrorKind::kSingularDenominator, "beta (x_a + x_b) equals delta");
  }
  const double x_s = -(p.lambda_s + 2.0 * p.gamma * x_a * x_b) / denom;
  const double contact = p.beta * (x_a + x_b + x_s);
  if (contact == 0.0) {
    throw Error(ErrorKind::kSingularDenominator, "x_a + x_b + x_s vanishes");
  }
  return {p.lambda_l / contact, x_s};
}

double xa_from_xb(const SwarmParams& p, double x_b) {
  const double inflow = p.lambda_l + p.lambda_s;
  const double num = p.beta * inflow * x_b - p.lambda_l * p.delta;
  const double den = 2.0 * p.gamma * p.delta * x_b + p.beta * inflow;
  return -num / den;
}

double equilibrium_quadratic(const SwarmParams& p, double x) {
  return 2.0 * p.gamma * p.delta * x * x + 2.0 * p.beta * (p.lambda_l + p.lambda_s) * x -
         p.lambda_l * p.delta;
}

double quad_positive_root(const SwarmParams& p) {
  const double b = p.beta * (p.lambda_l + p.lambda_s);
  const double disc = std::sqrt(b * b + 2.0 * p.lambda_l * p.gamma * p.delta * p.delta);
  // (-2b + 2 sqrt(disc^2)) / (4 gamma delta), rationalised.
  return p.lambda_l * p.delta / (b + disc);
}

QuarticCoeffs quartic_coeffs(const SwarmParams& p) {
  const double ll = p.lambda_l, ls = p.lambda_s, b = p.beta, g = p.gamma, d = p.delta;
  const double ll2 = ll * ll, ll3 = ll2 * ll, ll4 = ll3 * ll;
  const double ls2 = ls * ls, ls3 = ls2 * ls;
  const double b2 = b * b, g2 = g * g, d2 = d * d, d3 = d2 * d;
  QuarticCoeffs a;
  a[0] = ll4 * b2 + ls3 * b2 * ll + 3.0 * ls * b2 * ll3 + 3.0 * ls2 * b2 * ll2;
  a[1] = 3.0 * ls2 * ll * d * g * b - ll2 * g * d3 + 6.0 * ls * ll2 * d * g * b +
         3.0 * d * g * b * ll3;
  a[2] = 3.0 * b2 * ls * ll2 * g + 3.0 * b2 * ls2 * ll * g + g * d2 * ll * b * ls +
         2.0 * g2 * ll * d2 * ls + 2.0 * g2 * ll2 * d2 + g * b * d2 * ll2 + b2 * g * ls3 +
         b2 * g * ll3;
  a[3] = 4.0 * ls * ll * d * g2 * b + 2.0 * ls2 * d * g2 * b + 2.0 * ll2 * d * g2 * b -
         2.0 * g2 * d3 * ll;
  a[4] = 2.0 * g2 * d2 * ll * b + 2.0 * g2 * d2 * b * ls;
  return a;
}

// ---------------------------------------------------------------------------

DiscriminantParams DiscriminantParams::from(const SwarmParams& p) {
  return {p.beta, p.gamma, p.lambda_l / p.delta, p.delta / p.lambda_s};
}

SwarmParams DiscriminantParams::swarm_params(double lambda_s) const {
  SwarmParams p;
  p.beta = beta;
  p.gamma = gamma;
  p.lambda_s = lambda_s;
  p.delta = xi * lambda_s;
  p.lambda_l = eta * p.delta;
  return p;
}

LambdaBounds discriminant_lambda_bounds(const DiscriminantParams& d) {
  const double b = d.beta, g = d.gamma;
  const double ex = d.eta * d.xi + 1.0;
  const double prefactor = ex * ex / (4.0 * g * d.xi * d.xi * d.xi * d.eta);
  const double centre = 10.0 * b * g + g * g;
  const double root = std::sqrt(68.0 * b * b * g * g + 20.0 * b * g * g * g + g * g * g * g +
                                64.0 * g * b * b * b);
  return {prefactor * (centre - root), prefactor * (centre + root), d.in_regime()};
}

double discriminant_lambda_midpoint(const DiscriminantParams& d) {
  const double ex = d.eta * d.xi + 1.0;
  return ex * ex * (d.gamma + 10.0 * d.beta) / (4.0 * d.xi * d.xi * d.xi * d.eta);
}

double discriminant_sign_factor(const DiscriminantParams& d, double lambda_s) {
  const double b = d.beta, g = d.gamma, eta = d.eta, xi = d.xi;
  const double ex = eta * xi + 1.0;
  const double p2 = ex * ex;
  const double xi3 = xi * xi * xi;
  return 4.0 * b * b * (2.0 * b - g) * p2 * p2 +
         eta * xi3 * g * (10.0 * b + g) * p2 * lambda_s -
         2.0 * eta * eta * g * xi3 * xi3 * lambda_s * lambda_s;
}

std::array<double, 2> discriminant_square_factors(const DiscriminantParams& d,
                                                  double lambda_s) {
  const double b = d.beta, g = d.gamma, eta = d.eta, xi = d.xi;
  const double ex = eta * xi + 1.0;
  const double p2 = ex * ex;
  const double xi3 = xi * xi * xi;
  const double s1 = b * b * p2 + 2.0 * eta * g * lambda_s * xi3;
  const double s2 = b * b * p2 * p2 - 6.0 * b * eta * lambda_s * xi3 * p2 +
                    eta * eta * lambda_s * lambda_s * xi3 * xi3;
  return {s1, s2};
}

// ---------------------------------------------------------------------------

Stability closed_loop_stability(const SwarmParams& p, const ControlPolicy& policy,
                                const SwarmState& s) {
  auto f = [&](const std::array<double, 4>& x) {
    const double u = policy.value(x[1], x[2]);
    return two_segment_rhs(p, SwarmState::from_array(x), u).to_array();
  };
  const auto x0 = s.to_array();
  Eigen::Matrix4d jac;
  for (int j = 0; j < 4; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x0[j]));
    auto plus = x0, minus = x0;
    plus[j] += h;
    minus[j] -= h;
    const auto fp = f(plus), fm = f(minus);
    for (int i = 0; i < 4; ++i) jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
  }
  Eigen::EigenSolver<Eigen::Matrix4d> solver(jac, false);
  Stability st;
  int negative = 0, positive = 0;
  for (int i = 0; i < 4; ++i) {
    st.eigenvalues[i] = solver.eigenvalues()(i);
    const double re = st.eigenvalues[i].real();
    if (re < -1e-9) ++negative;
    else if (re > 1e-9) ++positive;
  }
  std::sort(st.eigenvalues.begin(), st.eigenvalues.end(),
            [](const auto& l, const auto& r) {
              return l.real() != r.real() ? l.real() < r.real() : l.imag() < r.imag();
            });
  if (negative == 4) st.label = "stable";
  else if (positive == 4) st.label = "unstable";
  else if (positive > 0 && negative > 0) st.label = "saddle";
  else st.label = "marginal";
  return st;
}

namespace {

EquilibriumPoint make_point(const SwarmParams& p, const SwarmState& s) {
  const ControlPolicy rarest = ControlPolicy::continuous_rarest();
  EquilibriumPoint pt;
  pt.state = s;
  pt.rhs_norm = two_segment_rhs(p, s, rarest.value(s.x_a, s.x_b)).max_abs();
  pt.sojourn = littles_sojourn(s, p.lambda_l);
  pt.stability = closed_loop_stability(p, rarest, s);
  return pt;
}

}  // namespace

EquilibriumSet continuous_control_equilibria(const SwarmParams& p) {
  validate_two_segment(p);
  EquilibriumSet set;

  const double inflow = p.lambda_l + p.lambda_s;
  const double root = std::sqrt(p.beta * p.beta * inflow * inflow +
                                2.0 * p.lambda_l * p.gamma * p.delta * p.delta);
  SwarmState diag;
  diag.x_s = inflow / p.delta;
  diag.x_l = p.lambda_l * p.gamma * p.delta /
             (p.beta * (inflow * (p.gamma - p.beta) + root));
  diag.x_a = diag.x_b = quad_positive_root(p);
  set.on_diagonal = make_point(p, diag);

  const QuarticCoeffs a = quartic_coeffs(p);
  set.invariants = quartic_invariants(a);
  set.classification = set.invariants.classify();
  set.quartic_roots = solve_quartic(a);

  for (double x_b : set.quartic_roots) {
    if (!(x_b > 0.0)) continue;
    const double x_a = xa_from_xb(p, x_b);
    if (!(x_a > 0.0)) continue;
    if (std::abs(x_a - x_b) <= 1e-9 * (x_a + x_b)) continue;
    LeecherSeeder ls;
    try {
      ls = xl_xs_from_xab(p, x_a, x_b);
    } catch (const Error&) {
      continue;
    }
    if (!(ls.x_l > 0.0 && ls.x_s > 0.0)) continue;
    EquilibriumPoint pt = make_point(p, {ls.x_l, x_a, x_b, ls.x_s});
    if (pt.rhs_norm < kEquilibriumTolerance) set.off_diagonal.push_back(std::move(pt));
  }
  std::sort(set.off_diagonal.begin(), set.off_diagonal.end(),
            [](const auto& l, const auto& r) { return l.state.x_a > r.state.x_a; });
  return set;
}

double littles_sojourn(const SwarmState& s, double lambda_l) {
  return (s.x_l + s.x_a + s.x_b) / lambda_l;
}

}  // namespace swarm
