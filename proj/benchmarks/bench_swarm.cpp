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

#include <vector>

#include <benchmark/benchmark.h>

#include "swarm/equilibrium.hpp"
#include "swarm/lumped.hpp"
#include "swarm/model.hpp"
#include "swarm/ode.hpp"
#include "swarm/optimal_control.hpp"
#include "swarm/quartic.hpp"

namespace {

using namespace swarm;

const SwarmParams kBalanced{0.0, 2.0, 3.0, 4.0, 1.0, 2.0};
const SwarmParams kSkewed{0.0, 2.0, 3.0, 48.4, 40.0, 44.0};
const SwarmState kStart{1.0, 0.2, 1.0, 0.5};

void BM_TwoSegmentRhs(benchmark::State& state) {
  SwarmState s = kStart;
  for (auto _ : state) {
    benchmark::DoNotOptimize(two_segment_rhs(kBalanced, s, 0.5));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_TwoSegmentRhs);

void BM_IntegrateRk45(benchmark::State& state) {
  const ControlPolicy policy =
      state.range(0) == 0 ? ControlPolicy::continuous_rarest() : ControlPolicy::bang_bang();
  IntegratorConfig cfg;
  cfg.t_end = 50.0;
  cfg.record_every = 0.1;
  const OdeSystem sys = two_segment_system(kBalanced);
  const Controller control = Controller::feedback(policy, 1, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(sys, kStart.to_array(), control, cfg));
  }
}
BENCHMARK(BM_IntegrateRk45)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_QuarticClassify(benchmark::State& state) {
  const QuarticCoeffs a = quartic_coeffs(kSkewed);
  for (auto _ : state) benchmark::DoNotOptimize(quartic_invariants(a).classify());
}
BENCHMARK(BM_QuarticClassify);

void BM_SolveQuartic(benchmark::State& state) {
  const QuarticCoeffs a = quartic_coeffs(kSkewed);
  for (auto _ : state) benchmark::DoNotOptimize(solve_quartic(a));
}
BENCHMARK(BM_SolveQuartic);

void BM_ContinuousEquilibria(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(continuous_control_equilibria(kSkewed));
}
BENCHMARK(BM_ContinuousEquilibria)->Unit(benchmark::kMicrosecond);

void BM_OpenLoopObjective(benchmark::State& state) {
  const std::vector<double> grid(static_cast<std::size_t>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_objective(kBalanced, kStart, grid, 2.0));
}
BENCHMARK(BM_OpenLoopObjective)->Arg(10)->Arg(40)->Unit(benchmark::kMicrosecond);

void BM_SolveMayer(benchmark::State& state) {
  const OCProblem prob{kBalanced, kStart, 2.0, static_cast<std::size_t>(state.range(0))};
  OptimizerConfig cfg;
  cfg.max_iterations = 20;
  for (auto _ : state) benchmark::DoNotOptimize(solve_mayer(prob, cfg));
}
BENCHMARK(BM_SolveMayer)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LumpedStationaryPoint(benchmark::State& state) {
  const LumpedParams p{1.0, 1.0, 1.0, 0.01, 0.1};
  const std::vector<double> x0{0.1, 0.01, 0.05, 1.0};
  const OdeSystem sys = lumped_system(p);
  const Controller control = Controller::constant(0.3);
  for (auto _ : state) benchmark::DoNotOptimize(stationary_point(sys, x0, control));
}
BENCHMARK(BM_LumpedStationaryPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
