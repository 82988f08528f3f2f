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

#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "swarm/equilibrium.hpp"
#include "swarm/error.hpp"
#include "swarm/io.hpp"
#include "swarm/quartic.hpp"

using namespace swarm;
using swarm::test::uniform;

namespace {

double scaled_residual(const SwarmParams& p, const SwarmState& s, double u) {
  const SwarmRates r = two_segment_rhs(p, s, u);
  const double scale = std::max({1.0, p.lambda_l, p.lambda_s, p.delta * s.x_s});
  return r.max_abs() / scale;
}

DiscriminantParams random_discriminant() {
  return {uniform(0.2, 5.0), uniform(0.2, 5.0), uniform(1.0, 3.0), uniform(1.0, 3.0)};
}

}  // namespace

TEST_CASE("constant-control equilibria") {
  const SwarmParams p = test::balanced_params();
  const SwarmState half = half_control_equilibrium(p);
  CHECK(half.x_l == doctest::Approx(12.0 / 19.0).epsilon(1e-14));
  CHECK(half.x_a == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(half.x_b == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(half.x_s == doctest::Approx(2.5).epsilon(1e-14));

  const SwarmState one = u1_equilibrium(p);
  CHECK(one.x_a == doctest::Approx(0.8));
  CHECK(one.x_b == 0.0);
  CHECK(scaled_residual(p, one, 1.0) < 1e-14);

  for (int i = 0; i < 500; ++i) {
    const SwarmParams q = test::random_params();
    CHECK(scaled_residual(q, half_control_equilibrium(q), 0.5) < 1e-12);
  }
}

TEST_CASE("diagonal quadratic has one positive root") {
  for (int i = 0; i < 500; ++i) {
    const SwarmParams p = test::random_params();
    const double x = quad_positive_root(p);
    CHECK(x > 0.0);
    const double scale = p.lambda_l * p.delta;
    CHECK(std::abs(equilibrium_quadratic(p, x)) < 1e-12 * scale);
    // The other root is negative: the quadratic is negative at zero and
    // opens upward.
    CHECK(equilibrium_quadratic(p, 0.0) < 0.0);
  }
}

TEST_CASE("slaved leecher and seeder populations") {
  for (int i = 0; i < 300; ++i) {
    const SwarmParams p = test::random_params();
    const double x_b = uniform(0.01, 5.0);
    const double x_a = xa_from_xb(p, x_b);
    LeecherSeeder ls;
    try {
      ls = xl_xs_from_xab(p, x_a, x_b);
    } catch (const Error&) {
      continue;
    }
    const SwarmState s{ls.x_l, x_a, x_b, ls.x_s};
    const double u = x_b / (x_a + x_b);
    const SwarmRates r = two_segment_rhs(p, s, u);
    const double scale = std::max({1.0, p.lambda_l, p.lambda_s,
                                   std::abs(p.delta * ls.x_s), std::abs(p.gamma * x_a * x_b)});
    CHECK(std::abs(r.x_l) < 1e-9 * scale);
    CHECK(std::abs(r.x_s) < 1e-9 * scale);
    CHECK(std::abs(r.x_a + r.x_b) < 1e-9 * scale);
  }
  SwarmParams p = test::balanced_params();
  CHECK_THROWS_AS(xl_xs_from_xab(p, 0.5, 0.5), Error);  // beta (x_a + x_b) == delta
}

TEST_CASE("difference numerator factors into the quadratic and the quartic") {
  // With x_a and the slaved (x_l, x_s) substituted, x_a' - x_b' is a ratio
  // whose numerator is -2 * quadratic * quartic. The denominator is
  // -delta * (2 gamma x^2 + lambda_l)(beta L + 2 gamma delta x) *
  // (beta L^2 + delta^2 lambda_l + 2 gamma delta L x + 2 gamma delta^2 x^2).
  double worst = 0.0;
  for (int set = 0; set < 20; ++set) {
    const SwarmParams p = test::random_params();
    const QuarticCoeffs a = quartic_coeffs(p);
    const double b = p.beta, g = p.gamma, d = p.delta, ll = p.lambda_l;
    const double L = p.lambda_l + p.lambda_s;
    for (int k = 0; k < 100; ++k) {
      const double x = uniform(0.01, 5.0);
      const double x_a = xa_from_xb(p, x);
      LeecherSeeder ls;
      try {
        ls = xl_xs_from_xab(p, x_a, x);
      } catch (const Error&) {
        continue;
      }
      const SwarmRates r = two_segment_rhs(p, {ls.x_l, x_a, x, ls.x_s}, x / (x_a + x));
      const double den = -d * (2 * g * x * x + ll) * (b * L + 2 * g * d * x) *
                         (b * L * L + d * d * ll + 2 * g * d * L * x + 2 * g * d * d * x * x);
      const double lhs = (r.x_a - r.x_b) * den;
      const double rhs = -2.0 * equilibrium_quadratic(p, x) * evaluate_quartic(a, x);
      worst = std::max(worst, test::rel_err(lhs, rhs));
    }
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("lambda_s bounds of the discriminant sign") {
  const DiscriminantParams d{2.0, 3.0, 1.1, 1.1};
  const LambdaBounds b = discriminant_lambda_bounds(d);
  CHECK(b.lambda0 == doctest::Approx(-0.759).epsilon(0.01 / 0.759));
  CHECK(b.lambda1 == doctest::Approx(39.121).epsilon(0.01 / 39.121));
  CHECK(b.in_regime);
  CHECK_FALSE((DiscriminantParams{2.0, 3.0, 0.5, 1.1}.in_regime()));

  for (int i = 0; i < 100; ++i) {
    const DiscriminantParams q = random_discriminant();
    const LambdaBounds lb = discriminant_lambda_bounds(q);
    const double mid = discriminant_lambda_midpoint(q);
    CHECK(mid == doctest::Approx(0.5 * (lb.lambda0 + lb.lambda1)).epsilon(1e-12));
    const double peak = discriminant_sign_factor(q, mid);
    const double ex = q.eta * q.xi + 1.0;
    const double want = std::pow(ex, 4) * (q.gamma + 16 * q.beta) *
                        std::pow(q.gamma + 2 * q.beta, 2) / 8.0;
    CHECK(test::rel_err(peak, want) < 1e-8);
    CHECK(std::abs(discriminant_sign_factor(q, lb.lambda0)) < 1e-9 * peak);
    CHECK(std::abs(discriminant_sign_factor(q, lb.lambda1)) < 1e-9 * peak);
  }
}

TEST_CASE("full discriminant factors through the sign factor") {
  for (int i = 0; i < 100; ++i) {
    const DiscriminantParams q = random_discriminant();
    const double ls = uniform(0.5, 20.0);
    const QuarticInvariants inv = quartic_invariants(quartic_coeffs(q.swarm_params(ls)));
    const auto [s1, s2] = discriminant_square_factors(q, ls);
    const double L = discriminant_sign_factor(q, ls);
    const double want = q.eta * std::pow(q.gamma, 6) * std::pow(ls, 19) * std::pow(q.xi, 3) *
                        s1 * s1 * s2 * s2 * L / 64.0;
    // I^3 - 27 J^2 cancels heavily; compare on the scale of its terms.
    const double scale = std::abs(inv.I * inv.I * inv.I) + 27.0 * inv.J * inv.J;
    CHECK(std::abs(inv.Delta - want) < 1e-9 * scale);
    if (std::abs(want) > 1e-6 * scale) CHECK((inv.Delta > 0) == (want > 0));
  }
}

TEST_CASE("continuous rarest-first equilibria, unique case") {
  const SwarmParams p = test::balanced_params();
  const EquilibriumSet set = continuous_control_equilibria(p);
  CHECK(set.off_diagonal.empty());
  CHECK(set.classification == RootClass::kNoRealRoots);
  CHECK(set.on_diagonal.state.x_l == doctest::Approx(12.0 / 19.0).epsilon(1e-12));
  CHECK(set.on_diagonal.state.x_a == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(set.on_diagonal.rhs_norm < 1e-12);
  CHECK(set.on_diagonal.stability.label == "stable");
  CHECK(p.lambda_l * set.on_diagonal.sojourn ==
        doctest::Approx(12.0 / 19.0 + 2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("continuous rarest-first equilibria, skewed case") {
  const SwarmParams p = test::skewed_params();
  const EquilibriumSet set = continuous_control_equilibria(p);
  REQUIRE(set.off_diagonal.size() == 2);
  const auto& hi = set.off_diagonal[0].state;
  const auto& lo = set.off_diagonal[1].state;
  CHECK(hi.x_a == doctest::Approx(5.23657408).epsilon(1e-8));
  CHECK(hi.x_b == doctest::Approx(0.77201822).epsilon(1e-8));
  CHECK(lo.x_a == doctest::Approx(hi.x_b).epsilon(1e-9));
  CHECK(lo.x_b == doctest::Approx(hi.x_a).epsilon(1e-9));
  CHECK(hi.x_l == doctest::Approx(3.01832828).epsilon(1e-8));
  CHECK(hi.x_s == doctest::Approx(2.00909091).epsilon(1e-8));
  for (const auto& pt : set.off_diagonal) CHECK(pt.rhs_norm < 1e-8);

  const SwarmState& diag = set.on_diagonal.state;
  CHECK(diag.x_a == doctest::Approx(2.2484).epsilon(1e-4));
  CHECK(diag.x_a + diag.x_b < hi.x_a + hi.x_b);
  CHECK(set.on_diagonal.sojourn < set.off_diagonal[0].sojourn);

  // Full 4-D linearisation: the diagonal point has one unstable direction and
  // the off-diagonal pair is locally attracting.
  CHECK(set.on_diagonal.stability.label == "saddle");
  CHECK(set.off_diagonal[0].stability.label == "stable");
}

TEST_CASE("off-diagonal count across the upper bound") {
  const DiscriminantParams d{2.0, 3.0, 1.1, 1.1};
  const double window_start =
      d.beta * std::pow(d.eta * d.xi + 1, 2) * (3 + std::sqrt(8.0)) / (d.eta * std::pow(d.xi, 3));
  CHECK(window_start == doctest::Approx(38.886).epsilon(1e-4));
  const auto rows = sweep_lambda_s({0, 2, 3, 48.4, 40, 44}, {30.0, 38.5, 39.0, 39.1, 39.2, 40.0, 50.0});
  CHECK(rows[0].off_diagonal == 0);
  CHECK(rows[1].off_diagonal == 0);
  // A second mirror pair lives between the double-root point and lambda_1.
  CHECK(rows[2].off_diagonal == 4);
  CHECK(rows[3].off_diagonal == 4);
  CHECK(rows[4].off_diagonal == 2);
  CHECK(rows[5].off_diagonal == 2);
  CHECK(rows[6].off_diagonal == 2);
  CHECK(rows[1].sign_factor > 0.0);
  CHECK(rows[2].sign_factor > 0.0);
  CHECK(rows[5].sign_factor < 0.0);
  CHECK_THROWS_AS(sweep_lambda_s(test::skewed_params(), {}), Error);
}

TEST_CASE("sojourn is linear in the leecher-side populations") {
  const SwarmState s{1.0, 2.0, 3.0, 7.0};
  CHECK(littles_sojourn(s, 2.0) == 3.0);
  CHECK(littles_sojourn({2.0, 4.0, 6.0, 1.0}, 2.0) == 2.0 * littles_sojourn(s, 2.0));
}
