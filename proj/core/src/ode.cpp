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

#include "swarm/ode.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "swarm/error.hpp"

namespace swarm {

StateVector OdeSystem::evaluate(std::span<const double> x, double u) const {
  StateVector dx(dimension, 0.0);
  rhs(x, u, dx);
  return dx;
}

OdeSystem two_segment_system(const SwarmParams& p) {
  OdeSystem sys;
  sys.dimension = 4;
  sys.labels = {"x_l", "x_a", "x_b", "x_s"};
  sys.rhs = [p](std::span<const double> x, double u, std::span<double> dx) {
    const SwarmRates r = two_segment_rhs(p, {x[0], x[1], x[2], x[3]}, u);
    dx[0] = r.x_l;
    dx[1] = r.x_a;
    dx[2] = r.x_b;
    dx[3] = r.x_s;
  };
  return sys;
}

OdeSystem one_segment_system(const SwarmParams& p) {
  OdeSystem sys;
  sys.dimension = 2;
  sys.labels = {"x_l", "x_s"};
  sys.rhs = [p](std::span<const double> x, double, std::span<double> dx) {
    const OneSegmentState r = one_segment_rhs(p, x[0], x[1]);
    dx[0] = r.x_l;
    dx[1] = r.x_s;
  };
  return sys;
}

// ---------------------------------------------------------------------------

Controller Controller::constant(double u) {
  if (!(u >= 0.0 && u <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "control must lie in [0, 1]");
  }
  Controller c;
  c.law_ = [u](double, std::span<const double>) { return u; };
  return c;
}

Controller Controller::feedback(ControlPolicy policy, std::size_t rare_index,
                                std::size_t common_index) {
  Controller c;
  if (policy.is_constant()) {
    return constant(policy.constant_value());
  }
  c.law_ = [policy, rare_index, common_index](double, std::span<const double> x) {
    return policy.value(x[rare_index], x[common_index]);
  };
  if (policy.is_switching()) {
    c.region_ = [policy, rare_index, common_index](std::span<const double> x) {
      return *policy.region(x[rare_index], x[common_index]);
    };
  }
  return c;
}

Controller Controller::feedback(ControlPolicy policy, std::vector<std::size_t> rare,
                                std::vector<std::size_t> common) {
  if (policy.is_constant()) {
    return constant(policy.constant_value());
  }
  auto sum = [](const std::vector<std::size_t>& idx, std::span<const double> x) {
    double total = 0.0;
    for (std::size_t i : idx) total += x[i];
    return total;
  };
  Controller c;
  c.law_ = [policy, rare, common, sum](double, std::span<const double> x) {
    return policy.value(sum(rare, x), sum(common, x));
  };
  if (policy.is_switching()) {
    c.region_ = [policy, rare, common, sum](std::span<const double> x) {
      return *policy.region(sum(rare, x), sum(common, x));
    };
  }
  return c;
}

Controller Controller::piecewise(std::vector<double> u_grid, double horizon) {
  if (u_grid.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "piecewise control needs at least one interval");
  }
  if (!(horizon > 0.0 && std::isfinite(horizon))) {
    throw Error(ErrorKind::kInvalidArgument, "piecewise control horizon must be positive");
  }
  for (double u : u_grid) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw Error(ErrorKind::kInvalidArgument, "piecewise control values must lie in [0, 1]");
    }
  }
  const std::size_t n = u_grid.size();
  const double width = horizon / static_cast<double>(n);
  Controller c;
  c.breakpoints_.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) c.breakpoints_.push_back(width * static_cast<double>(k));
  c.law_ = [grid = std::move(u_grid), width](double t, std::span<const double>) {
    const double pos = std::floor(t / width);
    const std::size_t k =
        pos <= 0.0 ? 0 : std::min(static_cast<std::size_t>(pos), grid.size() - 1);
    return grid[k];
  };
  return c;
}

// ---------------------------------------------------------------------------

void IntegratorConfig::validate() const {
  auto bad = [](const std::string& msg) { throw Error(ErrorKind::kInvalidArgument, msg); };
  if (!(step > 0.0 && std::isfinite(step))) bad("integrator step must be > 0");
  if (!(rel_tol > 0.0 && abs_tol > 0.0)) bad("integrator tolerances must be > 0");
  if (!(t_end >= 0.0 && std::isfinite(t_end))) bad("t_end must be finite and >= 0");
  if (!(steady_tol > 0.0)) bad("steady_tol must be > 0");
  if (!(record_every > 0.0 && std::isfinite(record_every))) bad("record_every must be > 0");
  if (!(min_step > 0.0)) bad("min_step must be > 0");
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC2 = 1.0 / 5.0, kC3 = 3.0 / 10.0, kC4 = 4.0 / 5.0, kC5 = 8.0 / 9.0;
constexpr double kA21 = 1.0 / 5.0;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
                 kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
constexpr double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
                 kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
// Differences between the 5th- and embedded 4th-order weights.
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0, kE4 = 71.0 / 1920.0,
                 kE5 = -17253.0 / 339200.0, kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;

class Stepper {
 public:
  Stepper(const OdeSystem& sys, const Controller& control, Method method)
      : sys_(sys), control_(control), method_(method), n_(sys.dimension) {
    for (auto& k : k_) k.assign(n_, 0.0);
    tmp_.assign(n_, 0.0);
  }

  // One explicit step of size h from (t, x). Returns the scaled error norm
  // (0 for RK4). `held` pins u for every stage.
  double step(double t, std::span<const double> x, double h, std::optional<double> held,
              double rel_tol, double abs_tol, StateVector& out) {
    out.assign(n_, 0.0);
    auto f = [&](double tt, std::span<const double> xx, StateVector& dx) {
      const double u = held ? *held : control_(tt, xx);
      sys_.rhs(xx, u, dx);
    };
    if (method_ == Method::kRk4) {
      f(t, x, k_[0]);
      for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + 0.5 * h * k_[0][i];
      f(t + 0.5 * h, tmp_, k_[1]);
      for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + 0.5 * h * k_[1][i];
      f(t + 0.5 * h, tmp_, k_[2]);
      for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + h * k_[2][i];
      f(t + h, tmp_, k_[3]);
      for (std::size_t i = 0; i < n_; ++i) {
        out[i] = x[i] + h / 6.0 * (k_[0][i] + 2.0 * k_[1][i] + 2.0 * k_[2][i] + k_[3][i]);
      }
      return 0.0;
    }

    f(t, x, k_[0]);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = x[i] + h * kA21 * k_[0][i];
    f(t + kC2 * h, tmp_, k_[1]);
    for (std::size_t i = 0; i < n_; ++i) {
      tmp_[i] = x[i] + h * (kA31 * k_[0][i] + kA32 * k_[1][i]);
    }
    f(t + kC3 * h, tmp_, k_[2]);
    for (std::size_t i = 0; i < n_; ++i) {
      tmp_[i] = x[i] + h * (kA41 * k_[0][i] + kA42 * k_[1][i] + kA43 * k_[2][i]);
    }
    f(t + kC4 * h, tmp_, k_[3]);
    for (std::size_t i = 0; i < n_; ++i) {
      tmp_[i] = x[i] + h * (kA51 * k_[0][i] + kA52 * k_[1][i] + kA53 * k_[2][i] +
                            kA54 * k_[3][i]);
    }
    f(t + kC5 * h, tmp_, k_[4]);
    for (std::size_t i = 0; i < n_; ++i) {
      tmp_[i] = x[i] + h * (kA61 * k_[0][i] + kA62 * k_[1][i] + kA63 * k_[2][i] +
                            kA64 * k_[3][i] + kA65 * k_[4][i]);
    }
    f(t + h, tmp_, k_[5]);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = x[i] + h * (kB1 * k_[0][i] + kB3 * k_[2][i] + kB4 * k_[3][i] +
                           kB5 * k_[4][i] + kB6 * k_[5][i]);
    }
    f(t + h, out, k_[6]);
    double err = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double e = h * (kE1 * k_[0][i] + kE3 * k_[2][i] + kE4 * k_[3][i] +
                            kE5 * k_[4][i] + kE6 * k_[5][i] + kE7 * k_[6][i]);
      const double scale = abs_tol + rel_tol * std::max(std::abs(x[i]), std::abs(out[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) err = std::numeric_limits<double>::infinity();
    return err;
  }

 private:
  const OdeSystem& sys_;
  const Controller& control_;
  Method method_;
  std::size_t n_;
  std::array<StateVector, 7> k_;
  StateVector tmp_;
};

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

double min_component(std::span<const double> x) {
  return x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());
}

std::string describe(double t, std::string_view what) {
  std::ostringstream os;
  os << what << " at t = " << std::setprecision(12) << t;
  return os.str();
}

}  // namespace

Trajectory integrate(const OdeSystem& system, std::span<const double> x0,
                     const Controller& control, const IntegratorConfig& cfg,
                     const Observer& observer) {
  cfg.validate();
  const std::size_t n = system.dimension;
  if (x0.size() != n) {
    throw Error(ErrorKind::kInvalidArgument, "initial state has the wrong dimension");
  }
  if (!all_finite(x0)) throw Error(ErrorKind::kNonFiniteState, "initial state is not finite");
  if (min_component(x0) < 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "initial state must be componentwise >= 0");
  }

  Trajectory traj;
  StateVector x(x0.begin(), x0.end());
  double t = 0.0;
  bool stop = false;
  auto record = [&](double tt, const StateVector& xx) {
    const double u = control(tt, xx);
    traj.times.push_back(tt);
    traj.states.push_back(xx);
    traj.controls.push_back(u);
    if (observer && !observer(tt, xx, u)) stop = true;
  };
  record(t, x);
  if (stop || cfg.t_end == 0.0) return traj;

  const auto& breaks = control.breakpoints();
  std::size_t next_break = 0;
  std::size_t record_index = 1;
  auto record_time = [&](std::size_t k) {
    return std::min(cfg.t_end, cfg.record_every * static_cast<double>(k));
  };
  double next_record = record_time(record_index);

  Stepper stepper(system, control, cfg.method);
  StateVector trial(n), probe(n);
  double h = cfg.step;
  std::size_t steps = 0;
  const double time_eps = 1e-12 * std::max(1.0, cfg.t_end);

  while (t < cfg.t_end) {
    if (++steps > cfg.max_steps) {
      throw Error(ErrorKind::kStepSizeUnderflow, describe(t, "step budget exhausted"));
    }
    while (next_break < breaks.size() && breaks[next_break] <= t + time_eps) ++next_break;
    double target = std::min(next_record, cfg.t_end);
    if (next_break < breaks.size()) target = std::min(target, breaks[next_break]);

    const double nominal = cfg.method == Method::kRk4 ? cfg.step : h;
    double h_try = std::min(nominal, target - t);
    bool lands_on_target = h_try >= target - t - time_eps;
    if (lands_on_target) h_try = target - t;

    std::optional<double> held;
    int region0 = 0;
    if (control.open_loop()) {
      held = control(t + 0.5 * h_try, x);
    } else if (control.switching()) {
      held = control(t, x);
      region0 = control.region(x);
    }

    const double err = stepper.step(t, x, h_try, held, cfg.rel_tol, cfg.abs_tol, trial);

    if (cfg.method == Method::kRk45) {
      const bool finite = all_finite(trial) && std::isfinite(err);
      const bool negative = finite && min_component(trial) < -cfg.abs_tol;
      if (!finite || err > 1.0 || negative) {
        const double factor =
            finite && !negative ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0) : 0.25;
        h = h_try * factor;
        if (h < cfg.min_step * std::max(1.0, t)) {
          if (!finite) throw Error(ErrorKind::kNonFiniteState, describe(t, "state diverged"));
          if (negative) {
            throw Error(ErrorKind::kNegativityViolation,
                        describe(t, "population went negative beyond abs_tol"));
          }
          throw Error(ErrorKind::kStepSizeUnderflow, describe(t, "step size underflow"));
        }
        continue;
      }
    } else {
      if (!all_finite(trial)) throw Error(ErrorKind::kNonFiniteState, describe(t, "state diverged"));
      if (min_component(trial) < -cfg.abs_tol) {
        throw Error(ErrorKind::kNegativityViolation,
                    describe(t, "population went negative beyond abs_tol"));
      }
    }

    // A held bang-bang step that jumps across the tie band is shortened until
    // it lands inside the band.
    double h_used = h_try;
    if (held && region0 != 0 && control.region(trial) == -region0) {
      double lo = 0.0, hi = h_try;
      bool landed = false;
      for (int it = 0; it < 200 && hi - lo > cfg.min_step; ++it) {
        const double mid = 0.5 * (lo + hi);
        stepper.step(t, x, mid, held, cfg.rel_tol, cfg.abs_tol, probe);
        const int r = control.region(probe);
        if (r == 0) {
          trial.swap(probe);
          h_used = mid;
          landed = true;
          break;
        }
        if (r == region0) lo = mid; else hi = mid;
      }
      if (!landed && lo > 0.0) {
        stepper.step(t, x, lo, held, cfg.rel_tol, cfg.abs_tol, trial);
        h_used = lo;
      }
      if (h_used != h_try) lands_on_target = false;
    }

    for (double& v : trial) {
      if (v < 0.0) {
        if (v < -cfg.abs_tol) {
          throw Error(ErrorKind::kNegativityViolation,
                      describe(t, "population went negative beyond abs_tol"));
        }
        v = 0.0;
      }
    }

    x.swap(trial);
    t = lands_on_target ? target : t + h_used;

    if (cfg.method == Method::kRk45 && h_used == h_try) {
      const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // Clipped steps do not shrink the controller's proposal.
      h = std::max(h, h_try * factor);
      if (!lands_on_target) h = h_try * factor;
    }

    if (t >= next_record - time_eps || t >= cfg.t_end) {
      if (t >= cfg.t_end - time_eps) t = cfg.t_end;
      record(t, x);
      if (stop) return traj;
      while (record_time(record_index) <= t + time_eps && record_time(record_index) < cfg.t_end) {
        ++record_index;
      }
      next_record = record_time(record_index);
    }
  }
  return traj;
}

double rhs_max_norm(const OdeSystem& system, const Controller& control, double t,
                    std::span<const double> x) {
  const StateVector dx = system.evaluate(x, control(t, x));
  double m = 0.0;
  for (double v : dx) m = std::max(m, std::abs(v));
  return m;
}

SteadyState find_steady_state(const OdeSystem& system, std::span<const double> x0,
                              const Controller& control, const IntegratorConfig& cfg) {
  SteadyState result;
  auto observer = [&](double t, std::span<const double> x, double) {
    const double norm = rhs_max_norm(system, control, t, x);
    result.state.assign(x.begin(), x.end());
    result.time = t;
    result.rhs_norm = norm;
    result.converged = norm < cfg.steady_tol;
    return !result.converged;
  };
  integrate(system, x0, control, cfg, observer);
  return result;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::string>& labels) {
  os << "t";
  for (const auto& l : labels) os << ',' << l;
  os << ",u\n";
  os << std::setprecision(17);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    os << traj.times[i];
    for (double v : traj.states[i]) os << ',' << v;
    os << ',' << traj.controls[i] << '\n';
  }
}

}  // namespace swarm
