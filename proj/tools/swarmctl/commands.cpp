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

#include "commands.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "swarm/error.hpp"
#include "swarm/io.hpp"
#include "swarm/lumped.hpp"
#include "swarm/optimal_control.hpp"
#include "swarm/phase_field.hpp"

namespace swarm::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string output_name(const Scenario& s, const std::string& key, const std::string& fallback) {
  const auto it = s.outputs.find(key);
  return it == s.outputs.end() ? fallback : it->second;
}

fs::path emit(const CommandOptions& opt, const std::string& name, const std::string& content) {
  const fs::path path = opt.out_dir / name;
  write_file_atomic(path, content);
  return path;
}

std::string extension(Format f) { return f == Format::kJson ? ".json" : ".csv"; }

// The model's ODE system and the scenario controller wired to it.
std::pair<OdeSystem, Controller> wire(const Scenario& s) {
  switch (s.model) {
    case ModelKind::kOneSegment:
      return {one_segment_system(s.swarm), Controller::constant(0.5)};
    case ModelKind::kTwoSegment:
      return {two_segment_system(s.swarm), Controller::feedback(s.controller, 1, 2)};
    case ModelKind::kLumped:
      return {lumped_system(s.lumped), lumped_controller(s.controller)};
    case ModelKind::kTwoClass:
      return {two_class_system(s.two_class), two_class_controller(s.controller)};
  }
  throw Error(ErrorKind::kUsage, "unknown model");
}

json trajectory_json(const Trajectory& t, const std::vector<std::string>& labels) {
  return {{"labels", labels}, {"t", t.times}, {"states", t.states}, {"u", t.controls}};
}

void require_model(const Scenario& s, std::initializer_list<ModelKind> allowed,
                   const std::string& command) {
  for (ModelKind m : allowed) {
    if (s.model == m) return;
  }
  throw Error(ErrorKind::kUsage,
              command + " is not available for model '" + to_string(s.model) + "'");
}

}  // namespace

Written cmd_simulate(const Scenario& s, const CommandOptions& opt) {
  const auto [sys, control] = wire(s);
  const Trajectory traj = integrate(sys, s.initial_state, control, s.integrator);
  std::ostringstream os;
  if (opt.format == Format::kJson) {
    os << trajectory_json(traj, sys.labels).dump(2) << '\n';
  } else {
    write_trajectory_csv(os, traj, sys.labels);
  }
  return {emit(opt, output_name(s, "trajectory", "trajectory" + extension(opt.format)), os.str())};
}

Written cmd_equilibria(const Scenario& s, const CommandOptions& opt) {
  const std::string report = equilibrium_report(s);
  Written written = {emit(opt, output_name(s, "equilibria", "equilibria.json"), report)};
  if (opt.format == Format::kCsv && s.model == ModelKind::kTwoSegment) {
    const json j = json::parse(report);
    std::ostringstream os;
    os << "kind,x_l,x_a,x_b,x_s,rhs_norm,sojourn,stability\n" << std::setprecision(17);
    auto row = [&](const std::string& kind, const json& pt) {
      const json& st = pt["state"];
      os << kind << ',' << st["x_l"].get<double>() << ',' << st["x_a"].get<double>() << ','
         << st["x_b"].get<double>() << ',' << st["x_s"].get<double>() << ','
         << pt["rhs_norm"].get<double>() << ',' << pt["sojourn"].get<double>() << ','
         << pt["stability"].get<std::string>() << '\n';
    };
    row("on_diagonal", j["on_diagonal"]);
    for (const auto& pt : j["off_diagonal"]) row("off_diagonal", pt);
    written.push_back(emit(opt, output_name(s, "equilibria_csv", "equilibria.csv"), os.str()));
  }
  return written;
}

Written cmd_sweep(const Scenario& s, const CommandOptions& opt) {
  if (!s.sweep) throw Error(ErrorKind::kUsage, "scenario has no 'sweep' section");
  const SweepSection& sw = *s.sweep;
  if (sw.values.empty()) throw Error(ErrorKind::kUsage, "sweep grid is empty");
  std::ostringstream os;
  const std::string name = output_name(s, "sweep", "sweep" + extension(opt.format));

  if (sw.parameter == "lambda_s") {
    require_model(s, {ModelKind::kTwoSegment}, "lambda_s sweep");
    const auto rows = sweep_lambda_s(s.swarm, sw.values, opt.threads);
    if (opt.format == Format::kJson) {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"lambda_s", r.lambda_s},
                       {"sign_factor", r.sign_factor},
                       {"classification", r.classification},
                       {"off_diagonal", r.off_diagonal},
                       {"on_diagonal_sojourn", r.on_diagonal_sojourn}});
      }
      os << arr.dump(2) << '\n';
    } else {
      write_lambda_sweep_csv(os, rows);
    }
    return {emit(opt, name, os.str())};
  }

  require_model(s, {ModelKind::kLumped, ModelKind::kTwoClass}, "u sweep");
  DelaySweepSpec spec;
  spec.model = s.model == ModelKind::kLumped ? LumpedModel::kLumped : LumpedModel::kTwoClass;
  spec.lumped = s.lumped;
  spec.two_class = s.two_class;
  spec.u_grid = sw.values;
  spec.per_class = sw.per_class && s.model == ModelKind::kTwoClass;
  spec.x0 = s.initial_state;
  spec.stationary.integrator = s.integrator;
  spec.stationary.integrator.t_end = std::max(s.integrator.t_end, 2000.0);
  spec.stationary.integrator.steady_tol = 1e-9;
  spec.threads = opt.threads;
  const auto curve = sweep_delay_vs_u(spec);
  const auto labels = state_labels(s.model);
  if (opt.format == Format::kJson) {
    json arr = json::array();
    for (const auto& pt : curve) {
      json row = {{"u", pt.u}, {"sojourn", pt.sojourn}, {"converged", pt.converged}};
      if (pt.sojourn_hi) row["sojourn_hi"] = *pt.sojourn_hi;
      if (pt.sojourn_lo) row["sojourn_lo"] = *pt.sojourn_lo;
      json st = json::object();
      for (std::size_t i = 0; i < labels.size() && i < pt.state.size(); ++i) {
        st[labels[i]] = pt.state[i];
      }
      row["state"] = st;
      arr.push_back(row);
    }
    os << arr.dump(2) << '\n';
  } else {
    write_sweep_csv(os, curve, labels, spec.per_class);
  }
  return {emit(opt, name, os.str())};
}

Written cmd_optimize(const Scenario& s, const CommandOptions& opt) {
  require_model(s, {ModelKind::kTwoSegment}, "optimize");
  if (!s.optimize) throw Error(ErrorKind::kUsage, "scenario has no 'optimize' section");
  OCProblem prob;
  prob.params = s.swarm;
  prob.x0 = SwarmState{s.initial_state[0], s.initial_state[1], s.initial_state[2],
                       s.initial_state[3]};
  prob.horizon = s.optimize->horizon;
  prob.n_intervals = s.optimize->n_intervals;
  OptimizerConfig cfg = s.optimize->optimizer;
  cfg.threads = opt.threads;
  const OCSolution sol = solve_mayer(prob, cfg);

  json baselines = json::object();
  bool beats = true;
  for (const ControlPolicy& p : {ControlPolicy::bang_bang(), ControlPolicy::continuous_rarest(),
                                 ControlPolicy::constant(0.5)}) {
    const double v = evaluate_objective(prob.params, prob.x0, p, prob.horizon);
    baselines[p.name()] = v;
    beats = beats && sol.objective <= v + 1e-6;
  }
  json starts = json::array();
  for (const auto& st : sol.starts) {
    starts.push_back({{"name", st.name},
                      {"initial_objective", st.initial_objective},
                      {"final_objective", st.final_objective},
                      {"iterations", st.iterations},
                      {"converged", st.converged}});
  }
  const json summary = {{"scenario", s.name},
                        {"objective", sol.objective},
                        {"converged", sol.converged},
                        {"best_start", sol.best_start},
                        {"starts", starts},
                        {"baselines", baselines},
                        {"beats_baselines", beats},
                        {"horizon", prob.horizon},
                        {"n_intervals", prob.n_intervals},
                        {"u", sol.u_grid}};

  Written written;
  written.push_back(emit(opt, output_name(s, "summary", "optimize_summary.json"),
                         summary.dump(2) + "\n"));
  std::ostringstream ctrl, traj;
  if (opt.format == Format::kJson) {
    traj << trajectory_json(sol.trajectory, state_labels(s.model)).dump(2) << '\n';
  } else {
    write_control_csv(ctrl, sol.u_grid, prob.horizon);
    written.push_back(emit(opt, output_name(s, "control", "optimize_control.csv"), ctrl.str()));
    write_trajectory_csv(traj, sol.trajectory, state_labels(s.model));
  }
  written.push_back(emit(opt,
                         output_name(s, "solution", "optimize_trajectory" + extension(opt.format)),
                         traj.str()));
  return written;
}

Written cmd_phase_field(const Scenario& s, const CommandOptions& opt) {
  require_model(s, {ModelKind::kTwoSegment}, "phase-field");
  if (!s.phase_field) throw Error(ErrorKind::kUsage, "scenario has no 'phase_field' section");
  PhaseFieldSpec spec;
  spec.grid = s.phase_field->grid;
  spec.slaved = s.phase_field->slaved;
  spec.trajectories = s.phase_field->trajectories;
  spec.starts = s.phase_field->starts;
  spec.integrator = s.integrator;
  spec.threads = opt.threads;
  const PhaseField field = phase_field(s.swarm, s.controller, spec);

  if (opt.format == Format::kJson) {
    json arrows = json::array();
    for (const auto& a : field.arrows) {
      arrows.push_back({{"x_a", a.x_a}, {"x_b", a.x_b}, {"dx_a", a.dx_a}, {"dx_b", a.dx_b},
                        {"u", a.u}});
    }
    json trajs = json::array();
    for (const auto& t : field.trajectories) trajs.push_back(trajectory_json(t, state_labels(s.model)));
    const json j = {{"x_l", field.x_l}, {"x_s", field.x_s}, {"arrows", arrows},
                    {"trajectories", trajs}};
    return {emit(opt, output_name(s, "phase", "phase_field.json"), j.dump(2) + "\n")};
  }
  std::ostringstream arrows, trajs;
  write_phase_arrows_csv(arrows, field);
  Written written = {emit(opt, output_name(s, "arrows", "phase_arrows.csv"), arrows.str())};
  if (spec.trajectories) {
    write_phase_trajectories_csv(trajs, field);
    written.push_back(
        emit(opt, output_name(s, "trajectories", "phase_trajectories.csv"), trajs.str()));
  }
  return written;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-segment swarm dynamics toolkit", "swarmctl"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::string format = "csv";
  unsigned threads = 1;

  using Command = Written (*)(const Scenario&, const CommandOptions&);
  const std::vector<std::tuple<std::string, std::string, Command>> commands = {
      {"simulate", "Integrate the scenario and write its trajectory", cmd_simulate},
      {"equilibria", "Report stationary points and discriminant bounds", cmd_equilibria},
      {"sweep", "Sweep u or lambda_s and tabulate the outcome", cmd_sweep},
      {"optimize", "Solve the terminal-cost control problem", cmd_optimize},
      {"phase-field", "Sample the (x_a, x_b) vector field and trajectories", cmd_phase_field},
  };
  Command selected = nullptr;
  for (const auto& [name, help, fn] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--threads", threads, "Worker threads")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    sub->callback([&selected, f = fn] { selected = f; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Scenario s = load_scenario(scenario_path);
    CommandOptions opt;
    opt.out_dir = out_dir;
    opt.format = format == "json" ? Format::kJson : Format::kCsv;
    opt.threads = threads;
    std::error_code ec;
    fs::create_directories(opt.out_dir, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create output directory '" + out_dir + "'");
    for (const auto& path : selected(s, opt)) out << path.string() << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "swarmctl: " << to_string(e.kind()) << ": " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::kConfigParse: return kExitConfig;
      case ErrorKind::kUsage:
      case ErrorKind::kInvalidArgument: return kExitUsage;
      case ErrorKind::kIo: return kExitIo;
      default: return kExitNumeric;
    }
  }
}

}  // namespace swarm::cli
