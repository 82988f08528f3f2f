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

// Terminal-cost (Mayer) optimal control of the two-segment model:
//
//   minimise x_l(T) + x_a(T) + x_b(T) over u(t) in [0, 1]
//
// by single shooting with a piecewise-constant control and projected gradient
// descent. Gradients are central finite differences of the objective, which is
// smooth in the control values because the open-loop grid is integrated with
// fixed RK4 steps aligned to the interval boundaries.

#ifndef SWARM_OPTIMAL_CONTROL_HPP_
#define SWARM_OPTIMAL_CONTROL_HPP_

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarm/model.hpp"
#include "swarm/ode.hpp"

namespace swarm {

struct OCProblem {
  SwarmParams params;
  SwarmState x0;
  double horizon = 1.0;
  std::size_t n_intervals = 20;

  void validate() const;
};

struct OptimizerConfig {
  std::size_t max_iterations = 300;
  std::size_t substeps = 10;       // RK4 steps per control interval
  double fd_step = 1e-6;           // central-difference half width
  double stationarity_tol = 1e-9;  // projected-gradient max-norm at a solution
  unsigned threads = 1;

  bool operator==(const OptimizerConfig&) const = default;
};

struct StartResult {
  std::string name;  // "all-0", "all-1", "all-half", "bang-bang"
  double initial_objective = 0.0;
  double final_objective = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct OCSolution {
  std::vector<double> u_grid;
  Trajectory trajectory;
  double objective = 0.0;  // terminal x_l + x_a + x_b of `trajectory`
  bool converged = false;  // false: best iterate after the iteration limit
  std::string best_start;
  std::vector<StartResult> starts;
};

// Terminal leecher-side mass under a closed-loop policy (adaptive RK45 with
// the given configuration; t_end is replaced by `horizon`).
double evaluate_objective(const SwarmParams& p, const SwarmState& x0,
                          const ControlPolicy& policy, double horizon,
                          IntegratorConfig cfg = {});

// Terminal leecher-side mass under a piecewise-constant open-loop control on
// equal intervals of [0, horizon], integrated with `substeps` RK4 steps per
// interval.
double evaluate_objective(const SwarmParams& p, const SwarmState& x0,
                          const std::vector<double>& u_grid, double horizon,
                          std::size_t substeps = 10);

// Open-loop trajectory for a control grid, recorded at every RK4 step.
Trajectory open_loop_trajectory(const SwarmParams& p, const SwarmState& x0,
                                const std::vector<double>& u_grid, double horizon,
                                std::size_t substeps = 10);

// Interval averages of the control realised by a closed-loop policy.
std::vector<double> sample_policy_on_grid(const SwarmParams& p, const SwarmState& x0,
                                          const ControlPolicy& policy, double horizon,
                                          std::size_t n_intervals);

OCSolution solve_mayer(const OCProblem& problem, const OptimizerConfig& cfg = {});

// CSV with header interval_start,u.
void write_control_csv(std::ostream& os, const std::vector<double>& u_grid, double horizon);

}  // namespace swarm

#endif  // SWARM_OPTIMAL_CONTROL_HPP_
