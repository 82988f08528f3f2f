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

// Rare-segment model: one rare segment plus a lumped class holding the other
// N-1 segments, in a single-class form and a two-class (high/low uplink) form
// where choking removes swaps between classes.
//
// Rarity-based policies read (x_r, x_N1) in place of (x_a, x_b); u is the
// probability that a seeder hands out the rare segment.

#ifndef SWARM_LUMPED_HPP_
#define SWARM_LUMPED_HPP_

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarm/model.hpp"
#include "swarm/ode.hpp"

namespace swarm {

struct LumpedParams {
  double beta_r = 0.0;   // rare-segment rate
  double beta_N1 = 0.0;  // lumped-segment rate
  double lambda_l = 0.0;
  double lambda_s = 0.0;
  double delta = 0.0;

  bool operator==(const LumpedParams&) const = default;
};

// Throws Error(kInvalidArgument) on nonpositive or non-finite fields. Warns
// when beta_r > beta_N1.
std::vector<std::string> validate(const LumpedParams& p);

struct LumpedState {
  double x_l = 0.0;
  double x_r = 0.0;   // holders of the rare segment only
  double x_N1 = 0.0;  // holders of everything but the rare segment
  double x_s = 0.0;

  std::array<double, 4> to_array() const { return {x_l, x_r, x_N1, x_s}; }
  static LumpedState from_array(std::span<const double> v) { return {v[0], v[1], v[2], v[3]}; }
  bool operator==(const LumpedState&) const = default;
};

std::array<double, 4> lumped_rhs(const LumpedParams& p, const LumpedState& s, double u);

// Diagonal stationary point at u = 1/2. Throws Error(kAsymmetricRates) unless
// beta_r == beta_N1.
LumpedState lumped_symmetric_equilibrium(const LumpedParams& p);

struct ClassParams {
  double lambda_l = 0.0;
  double lambda_s = 0.0;
  double delta = 0.0;

  bool operator==(const ClassParams&) const = default;
};

struct TwoClassParams {
  double beta_r = 0.0;
  double beta_N1 = 0.0;
  ClassParams hi;
  ClassParams lo;
  // Sensitivity variant without choking: every class-restricted contact population
  // in the loss and seeder-gain terms is replaced by its aggregate.
  bool symmetrized = false;

  bool operator==(const TwoClassParams&) const = default;
};

// Class arrivals may be zero (an empty class); rates must be positive.
std::vector<std::string> validate(const TwoClassParams& p);

struct TwoClassState {
  LumpedState hi;
  LumpedState lo;

  LumpedState aggregate() const;
  // Order: hi (l, r, N1, s) then lo (l, r, N1, s).
  std::array<double, 8> to_array() const;
  static TwoClassState from_array(std::span<const double> v);
  bool operator==(const TwoClassState&) const = default;
};

std::array<double, 8> two_class_rhs(const TwoClassParams& p, const TwoClassState& s, double u);

OdeSystem lumped_system(const LumpedParams& p);
OdeSystem two_class_system(const TwoClassParams& p);

// Closed-loop controller for the lumped models: the policy sees the aggregate
// (x_r, x_N1).
Controller lumped_controller(const ControlPolicy& policy);
Controller two_class_controller(const ControlPolicy& policy);

// (x_l + x_r + x_N1) / lambda_l.
double lumped_sojourn(const LumpedState& s, double lambda_l);

struct StationaryPoint {
  StateVector state;
  double rhs_norm = 0.0;
  bool converged = false;
};

struct StationaryConfig {
  IntegratorConfig integrator;   // t_end bounds the warm-up integration
  double tolerance = 1e-10;      // RHS max-norm at acceptance
  std::size_t newton_iterations = 50;

  StationaryConfig() {
    integrator.t_end = 2000.0;
    integrator.record_every = 1.0;
    integrator.steady_tol = 1e-9;
  }
};

// Integrates towards a stationary point and polishes it by damped Newton with
// a finite-difference Jacobian. Newton iterates are projected onto x >= 0.
StationaryPoint stationary_point(const OdeSystem& system, std::span<const double> x0,
                                 const Controller& control, const StationaryConfig& cfg = {});

enum class LumpedModel { kLumped, kTwoClass };

struct SweepPoint {
  double u = 0.0;
  double sojourn = 0.0;  // aggregate populations over aggregate lambda_l
  std::optional<double> sojourn_hi;
  std::optional<double> sojourn_lo;
  bool converged = false;
  StateVector state;
};

struct DelaySweepSpec {
  LumpedModel model = LumpedModel::kLumped;
  LumpedParams lumped;
  TwoClassParams two_class;
  std::vector<double> u_grid;
  bool per_class = false;
  StateVector x0;  // empty: all zero
  StationaryConfig stationary;
  unsigned threads = 1;
};

// Throws Error(kUsage) on an empty grid or values outside [0, 1].
std::vector<SweepPoint> sweep_delay_vs_u(const DelaySweepSpec& spec);

// Steady-state sojourn under a closed-loop policy on the single-class model,
// located as in stationary_point.
SweepPoint lumped_policy_sojourn(const LumpedParams& p, const ControlPolicy& policy,
                                 const LumpedState& x0, const StationaryConfig& cfg = {});

// CSV: u,sojourn[,sojourn_hi,sojourn_lo],converged,<state labels>.
void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& curve,
                     const std::vector<std::string>& labels, bool per_class);

}  // namespace swarm

#endif  // SWARM_LUMPED_HPP_
