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

// Scenario files: one JSON document per experiment, versioned by
// schema_version. Unknown keys are rejected so typos surface as ConfigParse
// errors naming the key.

#ifndef SWARM_SCENARIO_HPP_
#define SWARM_SCENARIO_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "swarm/equilibrium.hpp"
#include "swarm/lumped.hpp"
#include "swarm/model.hpp"
#include "swarm/ode.hpp"
#include "swarm/optimal_control.hpp"
#include "swarm/phase_field.hpp"

namespace swarm {

inline constexpr int kScenarioSchemaVersion = 1;

enum class ModelKind { kOneSegment, kTwoSegment, kLumped, kTwoClass };

std::string to_string(ModelKind m);

struct PhaseSection {
  PhaseGrid grid;
  std::optional<LeecherSeeder> slaved;
  bool trajectories = true;
  std::vector<std::pair<double, double>> starts;

  bool operator==(const PhaseSection& o) const {
    const auto key = [](const std::optional<LeecherSeeder>& s) {
      return s ? std::optional<std::pair<double, double>>({s->x_l, s->x_s}) : std::nullopt;
    };
    return grid == o.grid && key(slaved) == key(o.slaved) && trajectories == o.trajectories &&
           starts == o.starts;
  }
};

struct OptimizeSection {
  double horizon = 1.0;
  std::size_t n_intervals = 20;
  OptimizerConfig optimizer;

  bool operator==(const OptimizeSection&) const = default;
};

// A sweep over "u" (lumped and two-class models) or "lambda_s" (two-segment
// model, holding eta = lambda_l / delta and xi = delta / lambda_s fixed).
struct SweepSection {
  std::string parameter = "u";
  std::vector<double> values;
  bool per_class = false;

  bool operator==(const SweepSection&) const = default;
};

struct Scenario {
  int schema_version = kScenarioSchemaVersion;
  std::string name;
  std::string description;
  ModelKind model = ModelKind::kTwoSegment;

  // Only the block matching `model` is read and written.
  SwarmParams swarm;
  LumpedParams lumped;
  TwoClassParams two_class;

  ControlPolicy controller;
  StateVector initial_state;  // ordered as the model's state labels
  IntegratorConfig integrator;

  std::optional<PhaseSection> phase_field;
  std::optional<OptimizeSection> optimize;
  std::optional<SweepSection> sweep;
  std::map<std::string, std::string> outputs;  // artifact -> file name

  bool operator==(const Scenario&) const = default;
};

// State labels of a model, in storage order.
std::vector<std::string> state_labels(ModelKind model);

// Throw Error(kConfigParse) with a message naming the offending field.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

// Pretty-printed JSON with sorted keys.
std::string serialize_scenario(const Scenario& s);

// Controllers as JSON text, e.g. {"type":"controlled-rarity","k":2}.
ControlPolicy parse_policy(const std::string& text);
std::string serialize_policy(const ControlPolicy& policy);

}  // namespace swarm

#endif  // SWARM_SCENARIO_HPP_
