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

#include "swarm/lumped.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "swarm/error.hpp"
#include "swarm/parallel.hpp"

namespace swarm {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0 && std::isfinite(v))) {
    throw Error(ErrorKind::kInvalidArgument, std::string(name) + " must be finite and > 0");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0 && std::isfinite(v))) {
    throw Error(ErrorKind::kInvalidArgument, std::string(name) + " must be finite and >= 0");
  }
}

}  // namespace

std::vector<std::string> validate(const LumpedParams& p) {
  require_positive(p.beta_r, "beta_r");
  require_positive(p.beta_N1, "beta_N1");
  require_positive(p.lambda_l, "lambda_l");
  require_positive(p.lambda_s, "lambda_s");
  require_positive(p.delta, "delta");
  std::vector<std::string> warnings;
  if (p.beta_r > p.beta_N1) warnings.emplace_back("beta_r exceeds beta_N1");
  return warnings;
}

std::array<double, 4> lumped_rhs(const LumpedParams& p, const LumpedState& s, double u) {
  const double br = p.beta_r, bn = p.beta_N1;
  const double mix = u * br + (1.0 - u) * bn;
  return {
      p.lambda_l - (br * s.x_r + bn * s.x_N1 + mix * s.x_s) * s.x_l,
      br * (u * s.x_s + s.x_r) * s.x_l - (bn * s.x_s + br * s.x_N1) * s.x_r,
      bn * ((1.0 - u) * s.x_s + s.x_N1) * s.x_l - br * (s.x_s + s.x_r) * s.x_N1,
      p.lambda_s + bn * s.x_s * s.x_r + br * (2.0 * s.x_r + s.x_s) * s.x_N1 - p.delta * s.x_s,
  };
}

LumpedState lumped_symmetric_equilibrium(const LumpedParams& p) {
  validate(p);
  if (p.beta_r != p.beta_N1) {
    throw Error(ErrorKind::kAsymmetricRates, "symmetric equilibrium needs beta_r == beta_N1");
  }
  const double b = p.beta_r;
  const double inflow = p.lambda_s + p.lambda_l;
  const double c = 2.0 * p.delta * p.delta * p.lambda_l / b;
  // (-inflow + sqrt(inflow^2 + c)) / (2 delta), rationalised.
  const double x = c / (2.0 * p.delta * (inflow + std::sqrt(inflow * inflow + c)));
  const double denom = p.lambda_l * p.delta - b * x * inflow;
  if (!(denom > 0.0)) {
    throw Error(ErrorKind::kSingularDenominator, "symmetric equilibrium has no positive x_l");
  }
  return {x * p.lambda_l * p.delta / denom, x, x, inflow / p.delta};
}

// ---------------------------------------------------------------------------

std::vector<std::string> validate(const TwoClassParams& p) {
  require_positive(p.beta_r, "beta_r");
  require_positive(p.beta_N1, "beta_N1");
  for (const auto* c : {&p.hi, &p.lo}) {
    require_nonnegative(c->lambda_l, "lambda_l");
    require_nonnegative(c->lambda_s, "lambda_s");
    require_positive(c->delta, "delta");
  }
  if (!(p.hi.lambda_l + p.lo.lambda_l > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "total lambda_l must be > 0");
  }
  std::vector<std::string> warnings;
  if (p.beta_r > p.beta_N1) warnings.emplace_back("beta_r exceeds beta_N1");
  if (p.symmetrized) warnings.emplace_back("symmetrized two-class variant is not the printed model");
  return warnings;
}

LumpedState TwoClassState::aggregate() const {
  return {hi.x_l + lo.x_l, hi.x_r + lo.x_r, hi.x_N1 + lo.x_N1, hi.x_s + lo.x_s};
}

std::array<double, 8> TwoClassState::to_array() const {
  return {hi.x_l, hi.x_r, hi.x_N1, hi.x_s, lo.x_l, lo.x_r, lo.x_N1, lo.x_s};
}

TwoClassState TwoClassState::from_array(std::span<const double> v) {
  return {LumpedState::from_array(v.subspan(0, 4)), LumpedState::from_array(v.subspan(4, 4))};
}

std::array<double, 8> two_class_rhs(const TwoClassParams& p, const TwoClassState& s, double u) {
  const double br = p.beta_r, bn = p.beta_N1;
  const LumpedState a = s.aggregate();
  const LumpedState& hi = s.hi;
  const LumpedState& lo = s.lo;
  const double contact = br * a.x_r + bn * a.x_N1 + (u * br + (1.0 - u) * bn) * a.x_s;

  // Choked contact sets: hi rare holders only swap with hi lumped holders, lo
  // lumped holders only swap with lo rare holders.
  const double hi_partner_N1 = p.symmetrized ? a.x_N1 : hi.x_N1;
  const double lo_partner_r = p.symmetrized ? a.x_r : lo.x_r;

  const double lo_r_out = (bn * a.x_s + br * a.x_N1) * lo.x_r;
  const double hi_r_out = (bn * a.x_s + br * hi_partner_N1) * hi.x_r;
  const double lo_N1_out = br * (a.x_s + lo_partner_r) * lo.x_N1;
  const double hi_N1_out = br * (a.x_s + a.x_r) * hi.x_N1;

  return {
      p.hi.lambda_l - contact * hi.x_l,
      br * (u * a.x_s + a.x_r) * hi.x_l - hi_r_out,
      bn * ((1.0 - u) * a.x_s + a.x_N1) * hi.x_l - hi_N1_out,
      p.hi.lambda_s + hi_r_out + hi_N1_out - p.hi.delta * hi.x_s,
      p.lo.lambda_l - contact * lo.x_l,
      br * (u * a.x_s + a.x_r) * lo.x_l - lo_r_out,
      bn * ((1.0 - u) * a.x_s + a.x_N1) * lo.x_l - lo_N1_out,
      p.lo.lambda_s + lo_r_out + lo_N1_out - p.lo.delta * lo.x_s,
  };
}

OdeSystem lumped_system(const LumpedParams& p) {
  OdeSystem sys;
  sys.dimension = 4;
  sys.labels = {"x_l", "x_r", "x_N1", "x_s"};
  sys.rhs = [p](std::span<const double> x, double u, std::span<double> dx) {
    const auto r = lumped_rhs(p, LumpedState::from_array(x), u);
    std::copy(r.begin(), r.end(), dx.begin());
  };
  return sys;
}

OdeSystem two_class_system(const TwoClassParams& p) {
  OdeSystem sys;
  sys.dimension = 8;
  sys.labels = {"x_l_hi", "x_r_hi", "x_N1_hi", "x_s_hi",
                "x_l_lo", "x_r_lo", "x_N1_lo", "x_s_lo"};
  sys.rhs = [p](std::span<const double> x, double u, std::span<double> dx) {
    const auto r = two_class_rhs(p, TwoClassState::from_array(x), u);
    std::copy(r.begin(), r.end(), dx.begin());
  };
  return sys;
}

Controller lumped_controller(const ControlPolicy& policy) {
  return Controller::feedback(policy, 1, 2);
}

Controller two_class_controller(const ControlPolicy& policy) {
  return Controller::feedback(policy, std::vector<std::size_t>{1, 5},
                              std::vector<std::size_t>{2, 6});
}

double lumped_sojourn(const LumpedState& s, double lambda_l) {
  return (s.x_l + s.x_r + s.x_N1) / lambda_l;
}

// ---------------------------------------------------------------------------

StationaryPoint stationary_point(const OdeSystem& system, std::span<const double> x0,
                                 const Controller& control, const StationaryConfig& cfg) {
  const std::size_t n = system.dimension;
  const SteadyState warm = find_steady_state(system, x0, control, cfg.integrator);

  auto residual = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd f(static_cast<Eigen::Index>(n));
    system.rhs(std::span<const double>(x.data(), n), control(0.0, {x.data(), n}),
               std::span<double>(f.data(), n));
    return f;
  };

  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(warm.state.data(),
                                                        static_cast<Eigen::Index>(n));
  Eigen::VectorXd f = residual(x);
  double norm = f.lpNorm<Eigen::Infinity>();

  for (std::size_t it = 0; it < cfg.newton_iterations && norm >= cfg.tolerance; ++it) {
    Eigen::MatrixXd jac(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(1.0, std::abs(x[j]));
      Eigen::VectorXd plus = x, minus = x;
      plus[j] += h;
      minus[j] -= h;
      jac.col(static_cast<Eigen::Index>(j)) = (residual(plus) - residual(minus)) / (2.0 * h);
    }
    const Eigen::VectorXd dx = jac.colPivHouseholderQr().solve(-f);
    if (!dx.allFinite()) break;

    bool improved = false;
    for (double damping = 1.0; damping > 1e-6; damping *= 0.5) {
      const Eigen::VectorXd trial = (x + damping * dx).cwiseMax(0.0);
      const Eigen::VectorXd ft = residual(trial);
      const double tn = ft.lpNorm<Eigen::Infinity>();
      if (std::isfinite(tn) && tn < norm) {
        x = trial;
        f = ft;
        norm = tn;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }

  StationaryPoint sp;
  sp.state.assign(x.data(), x.data() + n);
  sp.rhs_norm = norm;
  sp.converged = norm < cfg.tolerance;
  return sp;
}

namespace {

SweepPoint sweep_one(const DelaySweepSpec& spec, const OdeSystem& sys,
                     std::span<const double> x0, double u) {
  SweepPoint pt;
  pt.u = u;
  try {
    const StationaryPoint sp = stationary_point(sys, x0, Controller::constant(u), spec.stationary);
    pt.converged = sp.converged;
    pt.state = sp.state;
  } catch (const Error&) {
    pt.converged = false;
    pt.sojourn = std::numeric_limits<double>::quiet_NaN();
    return pt;
  }
  if (spec.model == LumpedModel::kLumped) {
    pt.sojourn = lumped_sojourn(LumpedState::from_array(pt.state), spec.lumped.lambda_l);
    return pt;
  }
  const TwoClassState s = TwoClassState::from_array(pt.state);
  const double total = spec.two_class.hi.lambda_l + spec.two_class.lo.lambda_l;
  pt.sojourn = lumped_sojourn(s.aggregate(), total);
  if (spec.per_class) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const auto& c = spec.two_class;
    pt.sojourn_hi = c.hi.lambda_l > 0.0 ? lumped_sojourn(s.hi, c.hi.lambda_l) : nan;
    pt.sojourn_lo = c.lo.lambda_l > 0.0 ? lumped_sojourn(s.lo, c.lo.lambda_l) : nan;
  }
  return pt;
}

}  // namespace

std::vector<SweepPoint> sweep_delay_vs_u(const DelaySweepSpec& spec) {
  if (spec.u_grid.empty()) throw Error(ErrorKind::kUsage, "u sweep grid is empty");
  for (double u : spec.u_grid) {
    if (!(u >= 0.0 && u <= 1.0)) throw Error(ErrorKind::kUsage, "u sweep values must lie in [0, 1]");
  }
  const OdeSystem sys = spec.model == LumpedModel::kLumped ? lumped_system(spec.lumped)
                                                           : two_class_system(spec.two_class);
  if (spec.model == LumpedModel::kLumped) {
    validate(spec.lumped);
  } else {
    validate(spec.two_class);
  }
  StateVector x0 = spec.x0.empty() ? StateVector(sys.dimension, 0.0) : spec.x0;
  if (x0.size() != sys.dimension) {
    throw Error(ErrorKind::kInvalidArgument, "sweep initial state has the wrong dimension");
  }

  std::vector<SweepPoint> curve(spec.u_grid.size());
  parallel_for(curve.size(), spec.threads,
               [&](std::size_t i) { curve[i] = sweep_one(spec, sys, x0, spec.u_grid[i]); });
  return curve;
}

SweepPoint lumped_policy_sojourn(const LumpedParams& p, const ControlPolicy& policy,
                                 const LumpedState& x0, const StationaryConfig& cfg) {
  validate(p);
  const auto start = x0.to_array();
  const Controller control = lumped_controller(policy);
  SweepPoint pt;
  const StationaryPoint sp = stationary_point(lumped_system(p), start, control, cfg);
  pt.state = sp.state;
  pt.converged = sp.converged;
  const LumpedState s = LumpedState::from_array(pt.state);
  pt.u = policy.value(s.x_r, s.x_N1);
  pt.sojourn = lumped_sojourn(s, p.lambda_l);
  return pt;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepPoint>& curve,
                     const std::vector<std::string>& labels, bool per_class) {
  os << "u,sojourn";
  if (per_class) os << ",sojourn_hi,sojourn_lo";
  os << ",converged";
  for (const auto& l : labels) os << ',' << l;
  os << '\n' << std::setprecision(17);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& pt : curve) {
    os << pt.u << ',' << pt.sojourn;
    if (per_class) os << ',' << pt.sojourn_hi.value_or(nan) << ',' << pt.sojourn_lo.value_or(nan);
    os << ',' << (pt.converged ? 1 : 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      os << ',' << (i < pt.state.size() ? pt.state[i] : nan);
    }
    os << '\n';
  }
}

}  // namespace swarm
