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

#ifndef SWARM_QUARTIC_HPP_
#define SWARM_QUARTIC_HPP_

#include <array>
#include <string_view>
#include <vector>

namespace swarm {

// Coefficients a0..a4 of a0 + a1 x + a2 x^2 + a3 x^3 + a4 x^4.
using QuarticCoeffs = std::array<double, 5>;

enum class RootClass { kNoRealRoots, kRealRootsExist };

std::string_view to_string(RootClass c);

// Algebraic invariants of f = c0 + 4 c1 x + 6 c2 x^2 + 4 c3 x^3 + c4 x^4.
//
// J is the Hankel determinant | c4 c3 c2 ; c3 c2 c1 ; c2 c1 c0 |.
struct QuarticInvariants {
  std::array<double, 5> c{};  // binomially normalised coefficients c0..c4
  double G = 0.0;
  double H = 0.0;
  double I = 0.0;
  double J = 0.0;
  double Delta = 0.0;  // I^3 - 27 J^2

  RootClass classify() const;
};

// Throws Error(kDegenerateQuartic) when a4 == 0.
QuarticInvariants quartic_invariants(const QuarticCoeffs& a);

double evaluate_quartic(const QuarticCoeffs& a, double x);

// All distinct real roots in ascending order, Newton-polished. Throws
// Error(kDegenerateQuartic) when a4 == 0.
std::vector<double> solve_quartic(const QuarticCoeffs& a);

}  // namespace swarm

#endif  // SWARM_QUARTIC_HPP_
