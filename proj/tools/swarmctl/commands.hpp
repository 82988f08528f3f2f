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

// Subcommands of swarmctl. Each reads a scenario, writes its artifacts into
// the output directory and returns the paths written.

#ifndef SWARMCTL_COMMANDS_HPP_
#define SWARMCTL_COMMANDS_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarm/scenario.hpp"

namespace swarm::cli {

enum class Format { kCsv, kJson };

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  Format format = Format::kCsv;
  unsigned threads = 1;
};

using Written = std::vector<std::filesystem::path>;

Written cmd_simulate(const Scenario& s, const CommandOptions& opt);
Written cmd_equilibria(const Scenario& s, const CommandOptions& opt);
Written cmd_sweep(const Scenario& s, const CommandOptions& opt);
Written cmd_optimize(const Scenario& s, const CommandOptions& opt);
Written cmd_phase_field(const Scenario& s, const CommandOptions& opt);

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitNumeric = 4;
inline constexpr int kExitIo = 5;

// Parses the command line and dispatches. Diagnostics go to `err`, the list
// of written files to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swarm::cli

#endif  // SWARMCTL_COMMANDS_HPP_
