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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
// any criterion fails.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "swarm/equilibrium.hpp"
#include "swarm/error.hpp"
#include "swarm/lumped.hpp"
#include "swarm/model.hpp"
#include "swarm/ode.hpp"
#include "swarm/optimal_control.hpp"
#include "swarm/quartic.hpp"

using namespace swarm;

namespace {

std::mt19937_64 gen(20260418);

double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const SwarmParams kBalanced{0.0, 2.0, 3.0, 4.0, 1.0, 2.0};
const SwarmParams kSkewed{0.0, 2.0, 3.0, 48.4, 40.0, 44.0};
const LumpedParams kLumpedRef{1.0, 1.0, 1.0, 0.01, 0.1};
const SwarmState kStart{1.0, 0.2, 1.0, 0.5};

double rarest_residual(const SwarmParams& p, const SwarmState& s) {
  return two_segment_rhs(p, s, s.x_b / (s.x_a + s.x_b)).max_abs();
}

Verdict discriminant_bounds() {
  const LambdaBounds b = discriminant_lambda_bounds({2.0, 3.0, 1.1, 1.1});
  const bool ok = std::abs(b.lambda0 + 0.759) <= 0.01 && std::abs(b.lambda1 - 39.121) <= 0.01;
  return {ok, fmt("lambda0=%.5f lambda1=%.5f", b.lambda0, b.lambda1)};
}

Verdict off_diagonal_points() {
  const EquilibriumSet set = continuous_control_equilibria(kSkewed);
  if (set.off_diagonal.size() != 2) {
    return {false, fmt("found %zu off-diagonal points", set.off_diagonal.size())};
  }
  const SwarmState& a = set.off_diagonal[0].state;
  const SwarmState& b = set.off_diagonal[1].state;
  const bool values = std::abs(a.x_a - 5.237) <= 0.01 && std::abs(a.x_b - 0.772) <= 0.01 &&
                      std::abs(b.x_a - 0.772) <= 0.01 && std::abs(b.x_b - 5.237) <= 0.01;
  const double res = std::max(rarest_residual(kSkewed, a), rarest_residual(kSkewed, b));
  return {values && res < 1e-8,
          fmt("(%.5f, %.5f) (%.5f, %.5f) residual=%.2e", a.x_a, a.x_b, b.x_a, b.x_b, res)};
}

Verdict on_diagonal_point() {
  const EquilibriumSet set = continuous_control_equilibria(kSkewed);
  const SwarmState& on = set.on_diagonal.state;
  if (set.off_diagonal.empty()) return {false, "no off-diagonal points"};
  const SwarmState& off = set.off_diagonal[0].state;
  const double on_sum = on.x_a + on.x_b, off_sum = off.x_a + off.x_b;
  const bool ok = std::abs(on.x_a - 2.248) <= 0.001 && on.x_a == on.x_b &&
                  std::abs(on_sum - 4.496) <= 0.002 && std::abs(off_sum - 6.009) <= 0.002 &&
                  on_sum < off_sum && rarest_residual(kSkewed, on) < 1e-8;
  return {ok, fmt("x_a=x_b=%.5f sum=%.5f off-diagonal sum=%.5f", on.x_a, on_sum, off_sum)};
}

Verdict shared_equilibrium() {
  const std::array<double, 4> want{12.0 / 19.0, 1.0 / 3.0, 1.0 / 3.0, 2.5};
  // The closed form must zero the right-hand side.
  const double subst = two_segment_rhs(kBalanced, SwarmState::from_array(want), 0.5).max_abs();
  if (subst > 1e-14) return {false, fmt("closed form residual %.2e", subst)};
  IntegratorConfig cfg;
  cfg.t_end = 200.0;
  cfg.record_every = 0.5;
  cfg.steady_tol = 1e-9;
  double worst = 0.0;
  bool converged = true;
  for (const auto& policy : {ControlPolicy::constant(0.5), ControlPolicy::continuous_rarest(),
                             ControlPolicy::bang_bang()}) {
    const SteadyState ss = find_steady_state(two_segment_system(kBalanced), kStart.to_array(),
                                             Controller::feedback(policy, 1, 2), cfg);
    converged = converged && ss.converged;
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(ss.state[i] - want[i]));
  }
  return {converged && worst <= 1e-4, fmt("max deviation over 3 controllers %.2e", worst)};
}

double time_to_diagonal(const ControlPolicy& policy) {
  IntegratorConfig cfg;
  cfg.t_end = 50.0;
  cfg.record_every = 1e-4;
  double hit = INFINITY;
  integrate(two_segment_system(kBalanced), kStart.to_array(), Controller::feedback(policy, 1, 2), cfg,
            [&](double t, std::span<const double> x, double) {
              if (std::abs(x[1] - x[2]) < 1e-3) {
                hit = t;
                return false;
              }
              return true;
            });
  return hit;
}

Verdict controller_ordering() {
  const double t_bang = time_to_diagonal(ControlPolicy::bang_bang());
  const double t_rare = time_to_diagonal(ControlPolicy::continuous_rarest());
  OptimizerConfig cfg;
  cfg.threads = std::max(1u, std::thread::hardware_concurrency());
  const OCSolution sol = solve_mayer({kBalanced, kStart, 2.0, 40}, cfg);
  bool beats = true;
  std::string baselines;
  for (const auto& policy : {ControlPolicy::bang_bang(), ControlPolicy::continuous_rarest(),
                             ControlPolicy::constant(0.5)}) {
    const double v = evaluate_objective(kBalanced, kStart, policy, 2.0);
    beats = beats && sol.objective <= v + 1e-6;
    baselines += fmt(" %s=%.6f", policy.name().c_str(), v);
  }
  return {t_bang <= t_rare && beats,
          fmt("t_bang=%.4f t_rarest=%.4f optimum=%.6f", t_bang, t_rare, sol.objective) +
              baselines};
}

QuarticCoeffs from_roots(double lead, const std::vector<std::complex<double>>& r) {
  std::vector<std::complex<double>> p = {1.0};
  for (const auto& z : r) {
    std::vector<std::complex<double>> q(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= z * p[i];
    }
    p = q;
  }
  QuarticCoeffs a{};
  for (int i = 0; i < 5; ++i) a[i] = lead * p[i].real();
  return a;
}

Verdict classifier() {
  int disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    // Roots chosen first, so the number of real roots is known exactly.
    const int n_real = 2 * static_cast<int>(uniform(0.0, 3.0));
    std::vector<std::complex<double>> roots;
    while (static_cast<int>(roots.size()) < n_real) {
      const double r = uniform(-3.0, 3.0);
      bool apart = true;
      for (const auto& z : roots) apart = apart && std::abs(z.real() - r) > 0.1;
      if (apart) roots.emplace_back(r, 0.0);
    }
    while (roots.size() < 4) {
      const std::complex<double> z(uniform(-3.0, 3.0), uniform(0.1, 3.0));
      roots.push_back(z);
      roots.push_back(std::conj(z));
    }
    const double lead = (uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * uniform(0.2, 5.0);
    const bool says_real =
        quartic_invariants(from_roots(lead, roots)).classify() == RootClass::kRealRootsExist;
    if (says_real != (n_real > 0)) ++disagreements;
  }
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const DiscriminantParams d{uniform(0.2, 5.0), uniform(0.2, 5.0), uniform(1.0, 3.0),
                               uniform(1.0, 3.0)};
    const LambdaBounds b = discriminant_lambda_bounds(d);
    const double mid = 0.5 * (b.lambda0 + b.lambda1);
    const double ex = d.eta * d.xi + 1.0;
    const double want = std::pow(ex, 4) * (d.gamma + 16.0 * d.beta) *
                        std::pow(d.gamma + 2.0 * d.beta, 2) / 8.0;
    worst = std::max(worst, rel_err(discriminant_sign_factor(d, mid), want));
  }
  return {disagreements == 0 && worst <= 1e-8,
          fmt("disagreements=%d midpoint max rel err=%.2e", disagreements, worst)};
}

Verdict factorization() {
  double worst = 0.0;
  int points = 0;
  for (int set = 0; set < 20; ++set) {
    const SwarmParams p{0.0,
                        uniform(0.1, 5.0),
                        uniform(0.1, 5.0),
                        uniform(0.1, 50.0),
                        uniform(0.1, 50.0),
                        uniform(0.1, 50.0)};
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
      const double numer = (r.x_a - r.x_b) * den;
      const double want = -2.0 * equilibrium_quadratic(p, x) * evaluate_quartic(a, x);
      worst = std::max(worst, rel_err(numer, want));
      ++points;
    }
  }
  return {worst <= 1e-8 && points >= 1000,
          fmt("%d points, max rel err=%.2e", points, worst)};
}

Verdict lumped_closed_form() {
  const LumpedState eq = lumped_symmetric_equilibrium(kLumpedRef);
  const double L = kLumpedRef.lambda_l + kLumpedRef.lambda_s, d = kLumpedRef.delta;
  const double x = (-L + std::sqrt(L * L + 2.0 * d * d * kLumpedRef.lambda_l)) / (2.0 * d);
  const double x_l = x * kLumpedRef.lambda_l * d / (kLumpedRef.lambda_l * d - x * L);
  const double sojourn = lumped_sojourn(eq, kLumpedRef.lambda_l);
  const bool closed = rel_err(eq.x_r, x) < 1e-12 && rel_err(eq.x_l, x_l) < 1e-12 &&
                      std::abs(eq.x_r - 0.04927) < 5e-5 && eq.x_N1 == eq.x_r &&
                      std::abs(eq.x_s - 10.1) < 1e-12 && std::abs(sojourn - 0.1966) < 5e-5;

  IntegratorConfig cfg;
  cfg.t_end = 5000.0;
  cfg.record_every = 1.0;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-14;
  cfg.steady_tol = 1e-10;
  const SteadyState ss = find_steady_state(lumped_system(kLumpedRef), std::vector{0.1, 0.01, 0.05, 1.0},
                                           Controller::constant(0.5), cfg);
  double dev = 0.0;
  const auto want = eq.to_array();
  for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(ss.state[i] - want[i]));

  DelaySweepSpec spec;
  spec.lumped = kLumpedRef;
  for (int i = 0; i <= 20; ++i) spec.u_grid.push_back(i / 20.0);
  spec.x0 = {0.1, 0.01, 0.05, 1.0};
  spec.threads = std::max(1u, std::thread::hardware_concurrency());
  const auto curve = sweep_delay_vs_u(spec);
  const auto n_conv =
      std::count_if(curve.begin(), curve.end(), [](const SweepPoint& p) { return p.converged; });
  return {closed && ss.converged && dev <= 1e-6 && n_conv == 21,
          fmt("x_r=%.8f x_l=%.8f x_s=%.4f sojourn=%.8f ode dev=%.2e sweep %ld/21 converged",
              eq.x_r, eq.x_l, eq.x_s, sojourn, dev, static_cast<long>(n_conv))};
}

Verdict two_class_reduction() {
  const ClassParams lo{10.0, 0.1, 9.0};
  const TwoClassParams tp{1.0, 1.0, {0.0, 0.0, 0.9}, lo, false};
  const LumpedParams lp{1.0, 1.0, lo.lambda_l, lo.lambda_s, lo.delta};
  IntegratorConfig cfg;
  cfg.t_end = 50.0;
  cfg.record_every = 0.5;
  double worst = 0.0, hi_mass = 0.0;
  bool aligned = true;
  for (const auto& policy : {ControlPolicy::constant(0.5), ControlPolicy::continuous_rarest()}) {
    const Trajectory two = integrate(two_class_system(tp),
                                     std::vector{0.0, 0.0, 0.0, 0.0, 0.2, 0.01, 0.05, 0.0},
                                     two_class_controller(policy), cfg);
    const Trajectory one = integrate(lumped_system(lp), std::vector{0.2, 0.01, 0.05, 0.0},
                                     lumped_controller(policy), cfg);
    aligned = aligned && two.size() == one.size();
    for (std::size_t k = 0; k < std::min(two.size(), one.size()); ++k) {
      aligned = aligned && two.times[k] == one.times[k];
      for (int i = 0; i < 4; ++i) {
        const double agg = two.states[k][i] + two.states[k][4 + i];
        worst = std::max(worst, std::abs(agg - one.states[k][i]) /
                                    std::max(1.0, std::abs(one.states[k][i])));
        hi_mass = std::max(hi_mass, std::abs(two.states[k][i]));
      }
    }
  }
  return {aligned && worst <= 1e-7 && hi_mass == 0.0,
          fmt("max scaled deviation over t in [0, 50]=%.2e hi mass=%.1e", worst, hi_mass)};
}

Verdict conservation() {
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const SwarmParams p{0.0,
                        uniform(0.1, 5.0),
                        uniform(0.1, 5.0),
                        uniform(0.1, 50.0),
                        uniform(0.1, 50.0),
                        uniform(0.1, 50.0)};
    const SwarmState s{uniform(0.0, 10.0), uniform(0.0, 10.0), uniform(0.0, 10.0),
                       uniform(0.0, 10.0)};
    const double u = uniform(0.0, 1.0);
    const SwarmRates r = two_segment_rhs(p, s, u);
    const double total = r.x_l + r.x_a + r.x_b + r.x_s;
    const double want = p.lambda_l + p.lambda_s - p.delta * s.x_s;
    const double scale = std::max({1.0, std::abs(r.x_l), std::abs(r.x_a), std::abs(r.x_b),
                                   std::abs(r.x_s)});
    worst = std::max(worst, std::abs(total - want) / scale);
  }
  return {worst <= 1e-12, fmt("1000 samples, max scaled error=%.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"discriminant lambda_s bounds", discriminant_bounds},
      {"off-diagonal equilibria", off_diagonal_points},
      {"on-diagonal equilibrium and sojourn ordering", on_diagonal_point},
      {"shared equilibrium across controllers", shared_equilibrium},
      {"controller ordering and optimal control", controller_ordering},
      {"root-existence classifier", classifier},
      {"difference numerator factorization", factorization},
      {"lumped symmetric equilibrium and delay sweep", lumped_closed_form},
      {"two-class reduction to the lumped model", two_class_reduction},
      {"population balance", conservation},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
