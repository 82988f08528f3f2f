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

#include "swarm/phase_field.hpp"

#include <cmath>

#include "swarm/error.hpp"
#include "swarm/parallel.hpp"

namespace swarm {

void PhaseGrid::validate() const {
  auto usage = [](const char* msg) { throw Error(ErrorKind::kUsage, msg); };
  if (!(xa_min >= 0.0 && xb_min >= 0.0)) usage("phase grid bounds must be >= 0");
  if (!(std::isfinite(xa_max) && std::isfinite(xb_max))) usage("phase grid bounds must be finite");
  if (!(xa_max > xa_min && xb_max > xb_min)) usage("phase grid has zero area");
  if (nx < 2 || ny < 2) usage("phase grid needs at least two samples per axis");
}

PhaseField phase_field(const SwarmParams& p, const ControlPolicy& policy,
                       const PhaseFieldSpec& spec) {
  spec.grid.validate();
  PhaseField field;
  if (spec.slaved) {
    field.x_l = spec.slaved->x_l;
    field.x_s = spec.slaved->x_s;
  } else {
    const SwarmState eq = continuous_control_equilibria(p).on_diagonal.state;
    field.x_l = eq.x_l;
    field.x_s = eq.x_s;
  }

  const auto& g = spec.grid;
  field.arrows.reserve(g.nx * g.ny);
  for (std::size_t j = 0; j < g.ny; ++j) {
    const double x_b = g.xb_min + (g.xb_max - g.xb_min) * static_cast<double>(j) /
                                      static_cast<double>(g.ny - 1);
    for (std::size_t i = 0; i < g.nx; ++i) {
      const double x_a = g.xa_min + (g.xa_max - g.xa_min) * static_cast<double>(i) /
                                        static_cast<double>(g.nx - 1);
      const double u = policy.value(x_a, x_b);
      const SwarmRates r = two_segment_rhs(p, {field.x_l, x_a, x_b, field.x_s}, u);
      field.arrows.push_back({x_a, x_b, r.x_a, r.x_b, u});
    }
  }

  if (!spec.trajectories) return field;
  field.starts = {{g.xa_min, g.xb_min},
                  {g.xa_max, g.xb_min},
                  {g.xa_min, g.xb_max},
                  {g.xa_max, g.xb_max}};
  field.starts.insert(field.starts.end(), spec.starts.begin(), spec.starts.end());
  field.trajectories.resize(field.starts.size());

  const OdeSystem sys = two_segment_system(p);
  const Controller control = Controller::feedback(policy, 1, 2);
  parallel_for(field.starts.size(), spec.threads, [&](std::size_t k) {
    const auto [x_a, x_b] = field.starts[k];
    const StateVector x0 = {field.x_l, x_a, x_b, field.x_s};
    field.trajectories[k] = integrate(sys, x0, control, spec.integrator);
  });
  return field;
}

}  // namespace swarm
