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

// Shared helpers for the unit tests.

#ifndef SWARM_TESTS_SUPPORT_HPP_
#define SWARM_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <cmath>
#include <random>

#include "swarm/lumped.hpp"
#include "swarm/model.hpp"

namespace swarm::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20260418);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline SwarmParams balanced_params() { return {0.0, 2.0, 3.0, 4.0, 1.0, 2.0}; }
inline SwarmParams skewed_params() { return {0.0, 2.0, 3.0, 48.4, 40.0, 44.0}; }
inline LumpedParams lumped_ref_params() { return {1.0, 1.0, 1.0, 0.01, 0.1}; }

inline SwarmParams random_params() {
  return {0.0, uniform(0.1, 5.0), uniform(0.1, 5.0), uniform(0.1, 50.0), uniform(0.1, 50.0),
          uniform(0.1, 50.0)};
}

inline SwarmState random_state(double hi = 10.0) {
  return {uniform(0.0, hi), uniform(0.0, hi), uniform(0.0, hi), uniform(0.0, hi)};
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace swarm::test

#endif  // SWARM_TESTS_SUPPORT_HPP_
