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

// Explicit Runge-Kutta integration of controlled population models.
//
// A model is an OdeSystem (dimension plus rhs(x, u) -> dx/dt) and a Controller
// that produces the scalar control u from (t, x). Feedback laws with a
// switching surface (bang-bang) are held constant over each step; a step that
// would jump across the tie band is shortened by bisection so that it lands
// inside the band, where the law returns its tie value. This keeps the closed
// loop free of chattering without exact event location.

#ifndef SWARM_ODE_HPP_
#define SWARM_ODE_HPP_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarm/model.hpp"

namespace swarm {

using StateVector = std::vector<double>;

struct OdeSystem {
  std::size_t dimension = 0;
  std::function<void(std::span<const double> x, double u, std::span<double> dxdt)> rhs;
  std::vector<std::string> labels;  // one per component, used as CSV headers

  StateVector evaluate(std::span<const double> x, double u) const;
};

// The two-segment model on (x_l, x_a, x_b, x_s).
OdeSystem two_segment_system(const SwarmParams& p);
// The one-segment model on (x_l, x_s); ignores u.
OdeSystem one_segment_system(const SwarmParams& p);

class Controller {
 public:
  using Law = std::function<double(double t, std::span<const double> x)>;
  using Region = std::function<int(std::span<const double> x)>;

  static Controller constant(double u);
  // Closed-loop policy reading x[rare_index] as x_a and x[common_index] as x_b.
  static Controller feedback(ControlPolicy policy, std::size_t rare_index,
                             std::size_t common_index);
  // As above with x_a and x_b read as sums over index sets.
  static Controller feedback(ControlPolicy policy, std::vector<std::size_t> rare,
                             std::vector<std::size_t> common);
  // Open-loop piecewise-constant control on equal intervals of [0, horizon].
  static Controller piecewise(std::vector<double> u_grid, double horizon);

  double operator()(double t, std::span<const double> x) const { return law_(t, x); }
  bool switching() const { return static_cast<bool>(region_); }
  // Open-loop controls are piecewise constant in time and are evaluated once
  // per step at the step midpoint.
  bool open_loop() const { return !breakpoints_.empty(); }
  int region(std::span<const double> x) const { return region_(x); }
  // Interval boundaries the integrator must step onto (open-loop controls).
  const std::vector<double>& breakpoints() const { return breakpoints_; }

 private:
  Law law_;
  Region region_;
  std::vector<double> breakpoints_;
};

enum class Method { kRk4, kRk45 };

struct IntegratorConfig {
  Method method = Method::kRk45;
  double step = 1e-3;        // fixed step (RK4) and initial step guess (RK45)
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;    // also the clamp threshold for negative undershoot
  double t_end = 10.0;
  double steady_tol = 1e-10; // max-norm of the RHS that counts as stationary
  double record_every = 0.1;
  double min_step = 1e-13;
  std::size_t max_steps = 50'000'000;

  // Throws Error(kInvalidArgument) when a field is out of range. t_end may be
  // zero (a single-point trajectory).
  void validate() const;

  bool operator==(const IntegratorConfig&) const = default;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> controls;

  std::size_t size() const { return times.size(); }
  bool empty() const { return times.empty(); }
  const StateVector& back() const { return states.back(); }
};

// Called at every recorded point; returning false stops the integration after
// that point has been stored.
using Observer = std::function<bool(double t, std::span<const double> x, double u)>;

// Integrates from t = 0 to cfg.t_end, recording at multiples of
// cfg.record_every and at t_end. Throws Error with kind kStepSizeUnderflow,
// kNegativityViolation or kNonFiniteState.
Trajectory integrate(const OdeSystem& system, std::span<const double> x0,
                     const Controller& control, const IntegratorConfig& cfg,
                     const Observer& observer = {});

struct SteadyState {
  StateVector state;
  double time = 0.0;
  double rhs_norm = 0.0;
  bool converged = false;  // false: state is the final state at t_end
};

// First recorded state whose closed-loop RHS max-norm is below cfg.steady_tol.
SteadyState find_steady_state(const OdeSystem& system, std::span<const double> x0,
                              const Controller& control, const IntegratorConfig& cfg);

double rhs_max_norm(const OdeSystem& system, const Controller& control, double t,
                    std::span<const double> x);

// CSV with header t,<labels...>,u and 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::vector<std::string>& labels);

}  // namespace swarm

#endif  // SWARM_ODE_HPP_
