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
#include <sstream>
#include <vector>

#include "doctest.h"
#include "support.hpp"
#include "swarm/error.hpp"
#include "swarm/optimal_control.hpp"

using namespace swarm;
using swarm::test::balanced_params;

namespace {

const SwarmState kStart{1.0, 0.2, 1.0, 0.5};

}  // namespace

TEST_CASE("objective is the terminal leecher-side mass") {
  const SwarmParams p = balanced_params();
  const std::vector<double> grid(8, 0.3);
  const Trajectory traj = open_loop_trajectory(p, kStart, grid, 2.0);
  const auto& x = traj.back();
  CHECK(traj.times.back() == doctest::Approx(2.0));
  CHECK(evaluate_objective(p, kStart, grid, 2.0) == doctest::Approx(x[0] + x[1] + x[2]).epsilon(1e-14));
  CHECK(evaluate_objective(p, kStart, grid, 0.0) == doctest::Approx(2.2));
  CHECK(evaluate_objective(p, kStart, ControlPolicy::constant(0.5), 0.0) == doctest::Approx(2.2));
}

TEST_CASE("open-loop and closed-loop objectives agree for a constant control") {
  const SwarmParams p = balanced_params();
  const double open = evaluate_objective(p, kStart, std::vector<double>(10, 0.5), 2.0, 50);
  const double closed = evaluate_objective(p, kStart, ControlPolicy::constant(0.5), 2.0);
  CHECK(open == doctest::Approx(closed).epsilon(1e-8));
}

TEST_CASE("a single interval reduces to a scalar line search") {
  const SwarmParams p = balanced_params();
  OCProblem prob{p, kStart, 2.0, 1};
  OptimizerConfig cfg;
  const OCSolution sol = solve_mayer(prob, cfg);
  REQUIRE(sol.u_grid.size() == 1);
  // Dense scan over u as an independent oracle.
  double best = INFINITY;
  for (int i = 0; i <= 1000; ++i) {
    best = std::min(best, evaluate_objective(p, kStart, {i / 1000.0}, 2.0));
  }
  CHECK(sol.objective <= best + 1e-9);
  CHECK(sol.objective == doctest::Approx(best).epsilon(1e-6));
}

TEST_CASE("the optimized control beats the feedback baselines") {
  const SwarmParams p = balanced_params();
  OCProblem prob{p, kStart, 2.0, 20};
  OptimizerConfig cfg;
  cfg.threads = 4;
  const OCSolution sol = solve_mayer(prob, cfg);
  CHECK(sol.starts.size() == 4);
  CHECK(sol.u_grid.size() == 20);
  for (double u : sol.u_grid) {
    CHECK(u >= 0.0);
    CHECK(u <= 1.0);
  }
  for (const auto& policy : {ControlPolicy::bang_bang(), ControlPolicy::continuous_rarest(),
                             ControlPolicy::constant(0.5)}) {
    CHECK(sol.objective <= evaluate_objective(p, kStart, policy, 2.0) + 1e-6);
  }
  for (const auto& start : sol.starts) CHECK(start.final_objective <= start.initial_objective);
  const auto& x = sol.trajectory.back();
  CHECK(sol.objective == doctest::Approx(x[0] + x[1] + x[2]).epsilon(1e-14));
}

TEST_CASE("optimizer runs are deterministic across thread counts") {
  OCProblem prob{balanced_params(), kStart, 1.0, 6};
  OptimizerConfig one, many;
  many.threads = 4;
  const OCSolution a = solve_mayer(prob, one);
  const OCSolution b = solve_mayer(prob, many);
  CHECK(a.u_grid == b.u_grid);
  CHECK(a.objective == b.objective);
}

TEST_CASE("sampled bang-bang grid follows the rarer segment") {
  // x_a = 0.2 < x_b = 1.0: seed a first.
  const auto grid =
      sample_policy_on_grid(balanced_params(), kStart, ControlPolicy::bang_bang(), 2.0, 10);
  REQUIRE(grid.size() == 10);
  CHECK(grid.front() == doctest::Approx(1.0));
  for (double u : grid) CHECK((u >= 0.0 && u <= 1.0));
}

TEST_CASE("optimal-control problem validation") {
  OCProblem prob{balanced_params(), kStart, -1.0, 4};
  CHECK_THROWS_AS(prob.validate(), Error);
  prob.horizon = 1.0;
  prob.n_intervals = 0;
  CHECK_THROWS_AS(prob.validate(), Error);
  prob.n_intervals = 4;
  prob.x0.x_a = -1.0;
  CHECK_THROWS_AS(prob.validate(), Error);
}

TEST_CASE("control CSV layout") {
  std::ostringstream os;
  write_control_csv(os, {0.0, 1.0}, 2.0);
  CHECK(os.str() == "interval_start,u\n0,0\n1,1\n");
}
