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

#include "swarm/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <system_error>
#include <unistd.h>

#include "json.hpp"
#include "swarm/error.hpp"
#include "swarm/parallel.hpp"

namespace swarm {

using nlohmann::json;

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot rename onto '" + path.string() + "'");
  }
}

namespace {

json state_json(const std::vector<std::string>& labels, std::span<const double> x) {
  json j = json::object();
  for (std::size_t i = 0; i < labels.size(); ++i) j[labels[i]] = x[i];
  return j;
}

json point_json(const EquilibriumPoint& pt) {
  const auto x = pt.state.to_array();
  json eig = json::array();
  for (const auto& e : pt.stability.eigenvalues) eig.push_back({e.real(), e.imag()});
  return {{"state", state_json({"x_l", "x_a", "x_b", "x_s"}, x)},
          {"x_a_plus_x_b", pt.state.x_a + pt.state.x_b},
          {"rhs_norm", pt.rhs_norm},
          {"sojourn", pt.sojourn},
          {"stability", pt.stability.label},
          {"eigenvalues", eig}};
}

json two_segment_report(const SwarmParams& p) {
  json j;
  const auto warnings = validate_two_segment(p);
  const EquilibriumSet set = continuous_control_equilibria(p);
  j["warnings"] = warnings;
  j["on_diagonal"] = point_json(set.on_diagonal);
  json off = json::array();
  for (const auto& pt : set.off_diagonal) off.push_back(point_json(pt));
  j["off_diagonal"] = off;
  const auto& inv = set.invariants;
  j["invariants"] = {{"coefficients", quartic_coeffs(p)},
                     {"c", inv.c},
                     {"G", inv.G},
                     {"H", inv.H},
                     {"I", inv.I},
                     {"J", inv.J},
                     {"Delta", inv.Delta}};
  j["classification"] = std::string(to_string(set.classification));
  j["quartic_roots"] = set.quartic_roots;

  const DiscriminantParams d = DiscriminantParams::from(p);
  const LambdaBounds b = discriminant_lambda_bounds(d);
  j["lambda_bounds"] = {{"lambda0", b.lambda0},
                        {"lambda1", b.lambda1},
                        {"in_regime", b.in_regime},
                        {"eta", d.eta},
                        {"xi", d.xi},
                        {"lambda_s_inside", p.lambda_s > b.lambda0 && p.lambda_s < b.lambda1}};

  const SwarmState u1 = u1_equilibrium(p);
  j["constant_control"] = {
      {"u_half", state_json({"x_l", "x_a", "x_b", "x_s"}, half_control_equilibrium(p).to_array())},
      {"u_one", state_json({"x_l", "x_a", "x_b", "x_s"}, u1.to_array())}};
  return j;
}

json stationary_json(const Scenario& s, const OdeSystem& sys, const Controller& control) {
  StationaryConfig cfg;
  cfg.integrator = s.integrator;
  cfg.integrator.t_end = std::max(s.integrator.t_end, 2000.0);
  cfg.integrator.steady_tol = 1e-9;
  const StationaryPoint sp = stationary_point(sys, s.initial_state, control, cfg);
  return {{"state", state_json(sys.labels, sp.state)},
          {"rhs_norm", sp.rhs_norm},
          {"converged", sp.converged},
          {"controller", json::parse(serialize_policy(s.controller))}};
}

}  // namespace

std::string equilibrium_report(const Scenario& s) {
  json j;
  j["scenario"] = s.name;
  j["model"] = to_string(s.model);
  switch (s.model) {
    case ModelKind::kTwoSegment:
      j.update(two_segment_report(s.swarm));
      break;
    case ModelKind::kOneSegment: {
      const OneSegmentState eq = one_segment_equilibrium(s.swarm);
      j["equilibrium"] = {{"x_l", eq.x_l}, {"x_s", eq.x_s}, {"sojourn", eq.x_l / s.swarm.lambda_l}};
      break;
    }
    case ModelKind::kLumped: {
      const LumpedParams& p = s.lumped;
      j["warnings"] = validate(p);
      if (p.beta_r == p.beta_N1) {
        const LumpedState eq = lumped_symmetric_equilibrium(p);
        j["symmetric_equilibrium"] = {
            {"state", state_json({"x_l", "x_r", "x_N1", "x_s"}, eq.to_array())},
            {"sojourn", lumped_sojourn(eq, p.lambda_l)},
            {"rhs_norm", [&] {
               double m = 0.0;
               for (double v : lumped_rhs(p, eq, 0.5)) m = std::max(m, std::abs(v));
               return m;
             }()}};
      }
      json st = stationary_json(s, lumped_system(p), lumped_controller(s.controller));
      std::vector<double> x;
      for (const auto& l : {"x_l", "x_r", "x_N1", "x_s"}) x.push_back(st["state"][l]);
      st["sojourn"] = lumped_sojourn(LumpedState::from_array(x), p.lambda_l);
      j["stationary"] = st;
      break;
    }
    case ModelKind::kTwoClass: {
      const TwoClassParams& p = s.two_class;
      j["warnings"] = validate(p);
      const OdeSystem sys = two_class_system(p);
      json st = stationary_json(s, sys, two_class_controller(s.controller));
      std::vector<double> x;
      for (const auto& l : sys.labels) x.push_back(st["state"][l]);
      const TwoClassState ts = TwoClassState::from_array(x);
      st["sojourn"] = lumped_sojourn(ts.aggregate(), p.hi.lambda_l + p.lo.lambda_l);
      if (p.hi.lambda_l > 0.0) st["sojourn_hi"] = lumped_sojourn(ts.hi, p.hi.lambda_l);
      if (p.lo.lambda_l > 0.0) st["sojourn_lo"] = lumped_sojourn(ts.lo, p.lo.lambda_l);
      j["stationary"] = st;
      break;
    }
  }
  return j.dump(2) + "\n";
}

void write_phase_arrows_csv(std::ostream& os, const PhaseField& field) {
  os << "x_a,x_b,dx_a,dx_b,u\n" << std::setprecision(17);
  for (const auto& a : field.arrows) {
    os << a.x_a << ',' << a.x_b << ',' << a.dx_a << ',' << a.dx_b << ',' << a.u << '\n';
  }
}

void write_phase_trajectories_csv(std::ostream& os, const PhaseField& field) {
  os << "trajectory,t,x_l,x_a,x_b,x_s,u\n" << std::setprecision(17);
  for (std::size_t k = 0; k < field.trajectories.size(); ++k) {
    const Trajectory& tr = field.trajectories[k];
    for (std::size_t i = 0; i < tr.size(); ++i) {
      os << k << ',' << tr.times[i];
      for (double v : tr.states[i]) os << ',' << v;
      os << ',' << tr.controls[i] << '\n';
    }
  }
}

std::vector<LambdaSweepRow> sweep_lambda_s(const SwarmParams& base,
                                           const std::vector<double>& lambda_s,
                                           unsigned threads) {
  if (lambda_s.empty()) throw Error(ErrorKind::kUsage, "lambda_s sweep grid is empty");
  validate_two_segment(base);
  const DiscriminantParams d = DiscriminantParams::from(base);
  std::vector<LambdaSweepRow> rows(lambda_s.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    const double ls = lambda_s[i];
    if (!(ls > 0.0 && std::isfinite(ls))) {
      throw Error(ErrorKind::kUsage, "lambda_s sweep values must be finite and > 0");
    }
    SwarmParams p = d.swarm_params(ls);
    p.beta0 = base.beta0;
    const EquilibriumSet set = continuous_control_equilibria(p);
    rows[i] = {ls, discriminant_sign_factor(d, ls), std::string(to_string(set.classification)),
               set.off_diagonal.size(), set.on_diagonal.sojourn};
  });
  return rows;
}

void write_lambda_sweep_csv(std::ostream& os, const std::vector<LambdaSweepRow>& rows) {
  os << "lambda_s,sign_factor,classification,off_diagonal,on_diagonal_sojourn\n"
     << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.lambda_s << ',' << r.sign_factor << ',' << r.classification << ',' << r.off_diagonal
       << ',' << r.on_diagonal_sojourn << '\n';
  }
}

}  // namespace swarm
