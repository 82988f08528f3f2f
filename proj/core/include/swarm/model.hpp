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

// Parameters, states, dissemination controllers and right-hand sides of the
// one- and two-segment swarm models.

#ifndef SWARM_MODEL_HPP_
#define SWARM_MODEL_HPP_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace swarm {

// Rate constants of the swarm models.
//
// `beta0` is only used by the one-segment (whole file) model and may be left
// at zero for two-segment work.
struct SwarmParams {
  double beta0 = 0.0;     // whole-file client-server rate
  double beta = 0.0;      // segment client-server rate
  double gamma = 0.0;     // swap rate
  double lambda_l = 0.0;  // leecher arrivals per unit time
  double lambda_s = 0.0;  // permanent seeder arrivals per unit time
  double delta = 0.0;     // seeder departure rate

  bool operator==(const SwarmParams&) const = default;
};

// Throws Error(kInvalidArgument) unless beta, gamma, lambda_l, lambda_s and
// delta are finite and strictly positive. Returns human-readable warnings for
// violations of the soft ordering gamma >= beta > beta0 (beta0 is only checked
// when nonzero).
std::vector<std::string> validate_two_segment(const SwarmParams& p);

// Same contract for the one-segment model: beta0, lambda_l, lambda_s and delta
// must be positive.
std::vector<std::string> validate_one_segment(const SwarmParams& p);

// Population vector (x_l, x_a, x_b, x_s) of the two-segment model.
struct SwarmState {
  double x_l = 0.0;  // leechers holding nothing
  double x_a = 0.0;  // holders of segment a only
  double x_b = 0.0;  // holders of segment b only
  double x_s = 0.0;  // seeders

  std::array<double, 4> to_array() const { return {x_l, x_a, x_b, x_s}; }
  static SwarmState from_array(const std::array<double, 4>& v) {
    return {v[0], v[1], v[2], v[3]};
  }
  bool operator==(const SwarmState&) const = default;
};

// Time derivative of a SwarmState.
struct SwarmRates {
  double x_l = 0.0;
  double x_a = 0.0;
  double x_b = 0.0;
  double x_s = 0.0;

  std::array<double, 4> to_array() const { return {x_l, x_a, x_b, x_s}; }
  double max_abs() const;
};

struct SeederLifetimeParams {
  double lambda_l = 0.0;
  double lambda_s = 0.0;
  double delta_l = 0.0;  // departure rate of ex-leecher (temporary) seeders
  double delta_s = 0.0;  // departure rate of permanent seeders
};

// ---------------------------------------------------------------------------
// Dissemination controllers. A policy maps the two partial-holder populations
// (x_a, x_b) to the probability u that a seeder hands out segment a.

namespace policy {

struct Constant {
  double u = 0.5;
  bool operator==(const Constant&) const = default;
};

// u = x_b / (x_a + x_b), 1/2 on the empty swarm.
struct ContinuousRarest {
  bool operator==(const ContinuousRarest&) const = default;
};

// 1 when a is rarer, 0 when b is rarer, 1/2 inside the tie band. An empty
// tie_tol selects the relative default 1e-9 * (x_a + x_b + 1).
struct BangBang {
  std::optional<double> tie_tol;
  bool operator==(const BangBang&) const = default;
};

// u = x_a / (x_a + k x_b), 1/2 on the empty swarm.
struct ControlledRarity {
  double k = 1.0;
  bool operator==(const ControlledRarity&) const = default;
};

}  // namespace policy

class ControlPolicy {
 public:
  ControlPolicy() : rep_(policy::Constant{0.5}) {}

  static ControlPolicy constant(double u);
  static ControlPolicy continuous_rarest();
  static ControlPolicy bang_bang(std::optional<double> tie_tol = std::nullopt);
  static ControlPolicy controlled_rarity(double k);
  static ControlPolicy inverted(ControlPolicy inner);

  // Always in [0, 1] for nonnegative arguments.
  double value(double x_a, double x_b) const;

  // Discontinuous policies partition the quadrant into regions separated by
  // the tie band: -1 (a strictly rarer), 0 (tie), +1 (b strictly rarer).
  // Continuous policies have no switching surface and return std::nullopt.
  std::optional<int> region(double x_a, double x_b) const;
  bool is_switching() const;

  // Short machine-readable name ("constant", "bang-bang", ...).
  std::string name() const;

  bool is_constant() const;
  bool is_continuous_rarest() const;
  bool is_bang_bang() const;
  bool is_controlled_rarity() const;
  bool is_inverted() const;

  // Accessors; each throws Error(kInvalidArgument) on a variant mismatch.
  double constant_value() const;
  std::optional<double> tie_tol() const;
  double rarity_k() const;
  const ControlPolicy& inner() const;

  bool operator==(const ControlPolicy& other) const;

 private:
  struct Inverted {
    std::shared_ptr<const ControlPolicy> inner;
  };
  using Rep = std::variant<policy::Constant, policy::ContinuousRarest,
                           policy::BangBang, policy::ControlledRarity, Inverted>;

  explicit ControlPolicy(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

double control_value(const ControlPolicy& policy, double x_a, double x_b);

// ---------------------------------------------------------------------------
// Right-hand sides.

SwarmRates two_segment_rhs(const SwarmParams& p, const SwarmState& s, double u);

struct OneSegmentState {
  double x_l = 0.0;
  double x_s = 0.0;
};

OneSegmentState one_segment_rhs(const SwarmParams& p, double x_l, double x_s);

// Globally attracting stationary point of the one-segment model.
OneSegmentState one_segment_equilibrium(const SwarmParams& p);

// Rate whose inverse is the arrival-weighted mean lifetime of temporary and
// permanent seeders.
double effective_death_rate(const SeederLifetimeParams& q);

// Warnings for the lifetime parameters (permanent seeders are expected to
// outlive temporary ones, i.e. delta_s < delta_l). Throws on nonpositive input.
std::vector<std::string> validate(const SeederLifetimeParams& q);

}  // namespace swarm

#endif  // SWARM_MODEL_HPP_
