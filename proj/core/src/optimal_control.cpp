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

#include "swarm/optimal_control.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "swarm/error.hpp"
#include "swarm/parallel.hpp"

namespace swarm {

void OCProblem::validate() const {
  validate_two_segment(params);
  if (!(horizon > 0.0 && std::isfinite(horizon))) {
    throw Error(ErrorKind::kInvalidArgument, "optimal-control horizon must be finite and > 0");
  }
  if (n_intervals < 1) {
    throw Error(ErrorKind::kInvalidArgument, "optimal control needs at least one interval");
  }
  for (double v : x0.to_array()) {
    if (!(v >= 0.0 && std::isfinite(v))) {
      throw Error(ErrorKind::kInvalidArgument, "initial state must be finite and >= 0");
    }
  }
}

namespace {

double terminal_mass(std::span<const double> x) { return x[0] + x[1] + x[2]; }

IntegratorConfig open_loop_config(double horizon, std::size_t n, std::size_t substeps,
                                  double record_every) {
  IntegratorConfig cfg;
  cfg.method = Method::kRk4;
  cfg.step = horizon / static_cast<double>(n * std::max<std::size_t>(1, substeps));
  cfg.t_end = horizon;
  cfg.record_every = record_every;
  return cfg;
}

}  // namespace

double evaluate_objective(const SwarmParams& p, const SwarmState& x0,
                          const ControlPolicy& policy, double horizon,
                          IntegratorConfig cfg) {
  const auto start = x0.to_array();
  if (horizon == 0.0) return terminal_mass(start);
  cfg.t_end = horizon;
  cfg.record_every = horizon;
  const Trajectory traj =
      integrate(two_segment_system(p), start, Controller::feedback(policy, 1, 2), cfg);
  return terminal_mass(traj.back());
}

double evaluate_objective(const SwarmParams& p, const SwarmState& x0,
                          const std::vector<double>& u_grid, double horizon,
                          std::size_t substeps) {
  const auto start = x0.to_array();
  if (horizon == 0.0) return terminal_mass(start);
  const IntegratorConfig cfg = open_loop_config(horizon, u_grid.size(), substeps, horizon);
  const Trajectory traj = integrate(two_segment_system(p), start,
                                    Controller::piecewise(u_grid, horizon), cfg);
  return terminal_mass(traj.back());
}

Trajectory open_loop_trajectory(const SwarmParams& p, const SwarmState& x0,
                                const std::vector<double>& u_grid, double horizon,
                                std::size_t substeps) {
  IntegratorConfig cfg = open_loop_config(horizon, u_grid.size(), substeps, 0.0);
  cfg.record_every = cfg.step;
  return integrate(two_segment_system(p), x0.to_array(),
                   Controller::piecewise(u_grid, horizon), cfg);
}

std::vector<double> sample_policy_on_grid(const SwarmParams& p, const SwarmState& x0,
                                          const ControlPolicy& policy, double horizon,
                                          std::size_t n_intervals) {
  constexpr std::size_t kSamples = 20;
  const double width = horizon / static_cast<double>(n_intervals);
  IntegratorConfig cfg;
  cfg.t_end = horizon;
  cfg.record_every = width / kSamples;
  const Trajectory traj =
      integrate(two_segment_system(p), x0.to_array(), Controller::feedback(policy, 1, 2), cfg);
  std::vector<double> sum(n_intervals, 0.0), count(n_intervals, 0.0);
  // Each interval averages the control at its left-closed sample points.
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double mid = 0.5 * (traj.times[i] + traj.times[i + 1]);
    const auto k = std::min(n_intervals - 1, static_cast<std::size_t>(mid / width));
    sum[k] += 0.5 * (traj.controls[i] + traj.controls[i + 1]);
    count[k] += 1.0;
  }
  std::vector<double> grid(n_intervals, 0.5);
  for (std::size_t k = 0; k < n_intervals; ++k) {
    if (count[k] > 0.0) grid[k] = std::clamp(sum[k] / count[k], 0.0, 1.0);
  }
  return grid;
}

namespace {

class ProjectedGradient {
 public:
  ProjectedGradient(const OCProblem& prob, const OptimizerConfig& cfg)
      : prob_(prob), cfg_(cfg) {}

  double objective(const std::vector<double>& u) const {
    return evaluate_objective(prob_.params, prob_.x0, u, prob_.horizon, cfg_.substeps);
  }

  std::vector<double> gradient(const std::vector<double>& u) const {
    std::vector<double> g(u.size(), 0.0);
    parallel_for(u.size(), cfg_.threads, [&](std::size_t i) {
      // One-sided differences at the bounds keep every probe feasible.
      const double up = std::min(1.0, u[i] + cfg_.fd_step);
      const double dn = std::max(0.0, u[i] - cfg_.fd_step);
      std::vector<double> probe = u;
      probe[i] = up;
      const double fp = objective(probe);
      probe[i] = dn;
      const double fm = objective(probe);
      g[i] = (fp - fm) / (up - dn);
    });
    return g;
  }

  StartResult run(std::vector<double>& u, double& value) const {
    StartResult res;
    value = objective(u);
    res.initial_objective = value;
    double alpha = 0.0;
    std::vector<double> prev_u, prev_g;
    for (std::size_t it = 0; it < cfg_.max_iterations; ++it) {
      res.iterations = it + 1;
      const std::vector<double> g = gradient(u);

      double stationarity = 0.0;
      double gmax = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) {
        const double moved = std::clamp(u[i] - g[i], 0.0, 1.0);
        stationarity = std::max(stationarity, std::abs(moved - u[i]));
        gmax = std::max(gmax, std::abs(g[i]));
      }
      if (stationarity < cfg_.stationarity_tol) {
        res.converged = true;
        break;
      }

      // Barzilai-Borwein step length, falling back to a unit move in u.
      if (!prev_u.empty()) {
        double ss = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
          const double s = u[i] - prev_u[i];
          const double y = g[i] - prev_g[i];
          ss += s * s;
          sy += s * y;
        }
        alpha = sy > 0.0 ? ss / sy : 1.0 / gmax;
      } else {
        alpha = 1.0 / gmax;
      }
      alpha = std::clamp(alpha, 1e-12, 1e12);

      bool accepted = false;
      std::vector<double> trial(u.size());
      for (int ls = 0; ls < 50; ++ls) {
        double decrease = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
          trial[i] = std::clamp(u[i] - alpha * g[i], 0.0, 1.0);
          decrease += g[i] * (u[i] - trial[i]);
        }
        const double f = objective(trial);
        if (f <= value - 1e-4 * decrease && f < value) {
          prev_u = u;
          prev_g = g;
          u = trial;
          value = f;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) {
        // No descent at the resolution of the objective: a local minimum.
        res.converged = true;
        break;
      }
    }
    res.final_objective = value;
    return res;
  }

 private:
  const OCProblem& prob_;
  const OptimizerConfig& cfg_;
};

}  // namespace

OCSolution solve_mayer(const OCProblem& problem, const OptimizerConfig& cfg) {
  problem.validate();
  const std::size_t n = problem.n_intervals;
  std::vector<std::pair<std::string, std::vector<double>>> starts = {
      {"all-0", std::vector<double>(n, 0.0)},
      {"all-1", std::vector<double>(n, 1.0)},
      {"all-half", std::vector<double>(n, 0.5)},
      {"bang-bang", sample_policy_on_grid(problem.params, problem.x0, ControlPolicy::bang_bang(),
                                          problem.horizon, n)},
  };

  ProjectedGradient opt(problem, cfg);
  OCSolution best;
  double best_value = std::numeric_limits<double>::infinity();
  for (auto& [name, u] : starts) {
    double value = 0.0;
    StartResult res = opt.run(u, value);
    res.name = name;
    best.starts.push_back(res);
    if (value < best_value) {
      best_value = value;
      best.u_grid = u;
      best.best_start = name;
      best.converged = res.converged;
    }
  }
  best.trajectory =
      open_loop_trajectory(problem.params, problem.x0, best.u_grid, problem.horizon, cfg.substeps);
  best.objective = terminal_mass(best.trajectory.back());
  return best;
}

void write_control_csv(std::ostream& os, const std::vector<double>& u_grid, double horizon) {
  os << "interval_start,u\n" << std::setprecision(17);
  const double width = horizon / static_cast<double>(u_grid.size());
  for (std::size_t k = 0; k < u_grid.size(); ++k) {
    os << width * static_cast<double>(k) << ',' << u_grid[k] << '\n';
  }
}

}  // namespace swarm
