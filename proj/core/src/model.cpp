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

#include "swarm/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "swarm/error.hpp"

namespace swarm {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kStepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorKind::kNegativityViolation: return "NegativityViolation";
    case ErrorKind::kNonFiniteState: return "NonFiniteState";
    case ErrorKind::kSingularDenominator: return "SingularDenominator";
    case ErrorKind::kDegenerateQuartic: return "DegenerateQuartic";
    case ErrorKind::kAsymmetricRates: return "AsymmetricRates";
    case ErrorKind::kNotConverged: return "NotConverged";
    case ErrorKind::kConfigParse: return "ConfigParse";
    case ErrorKind::kUsage: return "Usage";
    case ErrorKind::kIo: return "Io";
  }
  return "Unknown";
}

namespace {

void require_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    std::ostringstream os;
    os << name << " must be finite and strictly positive (got " << v << ")";
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
}

double clamp01(double u) { return std::clamp(u, 0.0, 1.0); }

// x / (x + y) with the empty-swarm case pinned to 1/2.
double ratio_or_half(double num, double den) {
  if (den <= 0.0) return 0.5;
  return clamp01(num / den);
}

}  // namespace

std::vector<std::string> validate_two_segment(const SwarmParams& p) {
  require_positive(p.beta, "beta");
  require_positive(p.gamma, "gamma");
  require_positive(p.lambda_l, "lambda_l");
  require_positive(p.lambda_s, "lambda_s");
  require_positive(p.delta, "delta");
  std::vector<std::string> warnings;
  if (p.gamma < p.beta) {
    warnings.push_back("ordering gamma >= beta violated (gamma < beta)");
  }
  if (p.beta0 != 0.0 && !(p.beta > p.beta0)) {
    warnings.push_back("ordering beta > beta0 violated");
  }
  return warnings;
}

std::vector<std::string> validate_one_segment(const SwarmParams& p) {
  require_positive(p.beta0, "beta0");
  require_positive(p.lambda_l, "lambda_l");
  require_positive(p.lambda_s, "lambda_s");
  require_positive(p.delta, "delta");
  std::vector<std::string> warnings;
  if (p.beta != 0.0 && !(p.beta > p.beta0)) {
    warnings.push_back("ordering beta > beta0 violated");
  }
  return warnings;
}

double SwarmRates::max_abs() const {
  return std::max({std::abs(x_l), std::abs(x_a), std::abs(x_b), std::abs(x_s)});
}

// ---------------------------------------------------------------------------

ControlPolicy ControlPolicy::constant(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "constant control must lie in [0, 1]");
  }
  return ControlPolicy(policy::Constant{u});
}

ControlPolicy ControlPolicy::continuous_rarest() {
  return ControlPolicy(policy::ContinuousRarest{});
}

ControlPolicy ControlPolicy::bang_bang(std::optional<double> tie_tol) {
  if (tie_tol && !(*tie_tol >= 0.0 && std::isfinite(*tie_tol))) {
    throw Error(ErrorKind::kInvalidArgument, "tie_tol must be finite and >= 0");
  }
  return ControlPolicy(policy::BangBang{tie_tol});
}

ControlPolicy ControlPolicy::controlled_rarity(double k) {
  require_positive(k, "k");
  return ControlPolicy(policy::ControlledRarity{k});
}

ControlPolicy ControlPolicy::inverted(ControlPolicy inner) {
  return ControlPolicy(Inverted{std::make_shared<const ControlPolicy>(std::move(inner))});
}

namespace {

int bang_bang_region(const policy::BangBang& b, double x_a, double x_b) {
  const double tol = b.tie_tol ? *b.tie_tol : 1e-9 * (x_a + x_b + 1.0);
  if (x_a < x_b - tol) return -1;
  if (x_a > x_b + tol) return 1;
  return 0;
}

}  // namespace

double ControlPolicy::value(double x_a, double x_b) const {
  struct Visitor {
    double x_a, x_b;
    double operator()(const policy::Constant& c) const { return c.u; }
    double operator()(const policy::ContinuousRarest&) const {
      return ratio_or_half(x_b, x_a + x_b);
    }
    double operator()(const policy::BangBang& b) const {
      switch (bang_bang_region(b, x_a, x_b)) {
        case -1: return 1.0;
        case 1: return 0.0;
        default: return 0.5;
      }
    }
    double operator()(const policy::ControlledRarity& r) const {
      return ratio_or_half(x_a, x_a + r.k * x_b);
    }
    double operator()(const Inverted& inv) const {
      return 1.0 - inv.inner->value(x_a, x_b);
    }
  };
  return std::visit(Visitor{x_a, x_b}, rep_);
}

std::optional<int> ControlPolicy::region(double x_a, double x_b) const {
  if (const auto* b = std::get_if<policy::BangBang>(&rep_)) {
    return bang_bang_region(*b, x_a, x_b);
  }
  if (const auto* inv = std::get_if<Inverted>(&rep_)) {
    return inv->inner->region(x_a, x_b);
  }
  return std::nullopt;
}

bool ControlPolicy::is_switching() const {
  if (is_bang_bang()) return true;
  if (const auto* inv = std::get_if<Inverted>(&rep_)) return inv->inner->is_switching();
  return false;
}

std::string ControlPolicy::name() const {
  struct Visitor {
    std::string operator()(const policy::Constant&) const { return "constant"; }
    std::string operator()(const policy::ContinuousRarest&) const {
      return "continuous-rarest";
    }
    std::string operator()(const policy::BangBang&) const { return "bang-bang"; }
    std::string operator()(const policy::ControlledRarity&) const {
      return "controlled-rarity";
    }
    std::string operator()(const Inverted&) const { return "inverted"; }
  };
  return std::visit(Visitor{}, rep_);
}

bool ControlPolicy::is_constant() const {
  return std::holds_alternative<policy::Constant>(rep_);
}
bool ControlPolicy::is_continuous_rarest() const {
  return std::holds_alternative<policy::ContinuousRarest>(rep_);
}
bool ControlPolicy::is_bang_bang() const {
  return std::holds_alternative<policy::BangBang>(rep_);
}
bool ControlPolicy::is_controlled_rarity() const {
  return std::holds_alternative<policy::ControlledRarity>(rep_);
}
bool ControlPolicy::is_inverted() const { return std::holds_alternative<Inverted>(rep_); }

double ControlPolicy::constant_value() const {
  if (const auto* c = std::get_if<policy::Constant>(&rep_)) return c->u;
  throw Error(ErrorKind::kInvalidArgument, "policy is not constant");
}

std::optional<double> ControlPolicy::tie_tol() const {
  if (const auto* b = std::get_if<policy::BangBang>(&rep_)) return b->tie_tol;
  throw Error(ErrorKind::kInvalidArgument, "policy is not bang-bang");
}

double ControlPolicy::rarity_k() const {
  if (const auto* r = std::get_if<policy::ControlledRarity>(&rep_)) return r->k;
  throw Error(ErrorKind::kInvalidArgument, "policy is not controlled-rarity");
}

const ControlPolicy& ControlPolicy::inner() const {
  if (const auto* inv = std::get_if<Inverted>(&rep_)) return *inv->inner;
  throw Error(ErrorKind::kInvalidArgument, "policy is not inverted");
}

bool ControlPolicy::operator==(const ControlPolicy& other) const {
  if (rep_.index() != other.rep_.index()) return false;
  if (const auto* inv = std::get_if<Inverted>(&rep_)) {
    return *inv->inner == *std::get<Inverted>(other.rep_).inner;
  }
  return std::visit(
      [&other](const auto& lhs) -> bool {
        using T = std::decay_t<decltype(lhs)>;
        if constexpr (std::is_same_v<T, Inverted>) {
          return false;
        } else {
          return lhs == std::get<T>(other.rep_);
        }
      },
      rep_);
}

double control_value(const ControlPolicy& policy, double x_a, double x_b) {
  return policy.value(x_a, x_b);
}

// ---------------------------------------------------------------------------

SwarmRates two_segment_rhs(const SwarmParams& p, const SwarmState& s, double u) {
  const double b = p.beta;
  const double g = p.gamma;
  SwarmRates r;
  r.x_l = p.lambda_l - b * s.x_l * (s.x_a + s.x_b + s.x_s);
  r.x_a = -s.x_a * (b * s.x_s + g * s.x_b) + b * s.x_l * (s.x_a + u * s.x_s);
  r.x_b = -s.x_b * (b * s.x_s + g * s.x_a) + b * s.x_l * (s.x_b + (1.0 - u) * s.x_s);
  r.x_s = p.lambda_s + b * (s.x_a + s.x_b) * s.x_s + 2.0 * g * s.x_a * s.x_b -
          p.delta * s.x_s;
  return r;
}

OneSegmentState one_segment_rhs(const SwarmParams& p, double x_l, double x_s) {
  const double transfer = p.beta0 * x_l * x_s;
  return {-transfer + p.lambda_l, transfer - p.delta * x_s + p.lambda_s};
}

OneSegmentState one_segment_equilibrium(const SwarmParams& p) {
  const double inflow = p.lambda_l + p.lambda_s;
  return {p.delta * p.lambda_l / (p.beta0 * inflow), inflow / p.delta};
}

double effective_death_rate(const SeederLifetimeParams& q) {
  const double w_l = q.lambda_l / q.delta_l;
  const double w_s = q.lambda_s / q.delta_s;
  const double mean_lifetime = (w_l / q.delta_l + w_s / q.delta_s) / (w_l + w_s);
  return 1.0 / mean_lifetime;
}

std::vector<std::string> validate(const SeederLifetimeParams& q) {
  require_positive(q.lambda_l, "lambda_l");
  require_positive(q.lambda_s, "lambda_s");
  require_positive(q.delta_l, "delta_l");
  require_positive(q.delta_s, "delta_s");
  std::vector<std::string> warnings;
  if (!(q.delta_s < q.delta_l)) {
    warnings.push_back("permanent seeders should outlive temporary ones (delta_s < delta_l)");
  }
  return warnings;
}

}  // namespace swarm
