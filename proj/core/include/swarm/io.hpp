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

// Report and file output helpers shared by the command-line tool.

#ifndef SWARM_IO_HPP_
#define SWARM_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarm/phase_field.hpp"
#include "swarm/scenario.hpp"

namespace swarm {

// Writes to a sibling temporary file and renames it over `path`. Throws
// Error(kIo).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Stationary-point report for a scenario as pretty JSON with sorted keys.
//
//   two-segment  continuous rarest-first equilibria, quartic invariants,
//                classification and lambda_s bounds
//   one-segment  the globally attracting equilibrium
//   lumped       symmetric closed form (equal rates) and the numeric
//                stationary point under the scenario controller
//   two-class    numeric stationary point under the scenario controller
std::string equilibrium_report(const Scenario& s);

// x_a,x_b,dx_a,dx_b,u
void write_phase_arrows_csv(std::ostream& os, const PhaseField& field);
// trajectory,t,<labels>,u with trajectories numbered from 0.
void write_phase_trajectories_csv(std::ostream& os, const PhaseField& field);

// Rows of a lambda_s sweep of the two-segment model.
struct LambdaSweepRow {
  double lambda_s = 0.0;
  double sign_factor = 0.0;  // positive strictly between the bounds
  std::string classification;
  std::size_t off_diagonal = 0;
  double on_diagonal_sojourn = 0.0;
};

// Holds eta and xi of `base` fixed. Throws Error(kUsage) on an empty grid.
std::vector<LambdaSweepRow> sweep_lambda_s(const SwarmParams& base,
                                           const std::vector<double>& lambda_s,
                                           unsigned threads = 1);
void write_lambda_sweep_csv(std::ostream& os, const std::vector<LambdaSweepRow>& rows);

}  // namespace swarm

#endif  // SWARM_IO_HPP_
