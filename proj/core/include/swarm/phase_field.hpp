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

#ifndef SWARM_PHASE_FIELD_HPP_
#define SWARM_PHASE_FIELD_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "swarm/equilibrium.hpp"
#include "swarm/model.hpp"
#include "swarm/ode.hpp"

namespace swarm {

struct PhaseGrid {
  double xa_min = 0.0, xa_max = 1.0;
  double xb_min = 0.0, xb_max = 1.0;
  std::size_t nx = 11, ny = 11;

  // Throws Error(kUsage) on negative bounds, zero area or fewer than two
  // samples per axis.
  void validate() const;
  bool operator==(const PhaseGrid&) const = default;
};

struct PhaseFieldSpec {
  PhaseGrid grid;
  // Values of (x_l, x_s) used for the 2-D arrows. Defaults to the on-diagonal
  // equilibrium of the continuous rarest-first controller.
  std::optional<LeecherSeeder> slaved;
  bool trajectories = true;
  // Extra trajectory starts in (x_a, x_b); the four grid corners are always
  // included when trajectories are requested.
  std::vector<std::pair<double, double>> starts;
  IntegratorConfig integrator;
  unsigned threads = 1;
};

struct PhaseArrow {
  double x_a = 0.0, x_b = 0.0;
  double dx_a = 0.0, dx_b = 0.0;
  double u = 0.0;
};

struct PhaseField {
  double x_l = 0.0, x_s = 0.0;  // slaved values actually used
  std::vector<PhaseArrow> arrows;  // row-major, x_a fastest
  std::vector<std::pair<double, double>> starts;
  std::vector<Trajectory> trajectories;  // full 4-D, one per start
};

PhaseField phase_field(const SwarmParams& p, const ControlPolicy& policy,
                       const PhaseFieldSpec& spec);

}  // namespace swarm

#endif  // SWARM_PHASE_FIELD_HPP_
