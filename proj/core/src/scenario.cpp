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

#include "swarm/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "swarm/error.hpp"

namespace swarm {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorKind::kConfigParse, msg); }

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Typed access to one JSON object that remembers which keys were read.
class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j.is_object()) fail("field '" + (path_.empty() ? "<root>" : path_) + "' must be an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) {
    if (!j_.contains(key)) fail("missing field '" + join(path_, key) + "'");
    seen_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) fail("field '" + join(path_, key) + "' must be a number");
    return v.get<double>();
  }
  double number(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::size_t count(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      fail("field '" + join(path_, key) + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
  }
  std::size_t count(const std::string& key, std::size_t fallback) {
    return has(key) ? count(key) : fallback;
  }

  std::string text(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) fail("field '" + join(path_, key) + "' must be a string");
    return v.get<std::string>();
  }
  std::string text(const std::string& key, const std::string& fallback) {
    return has(key) ? text(key) : fallback;
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) fail("field '" + join(path_, key) + "' must be a boolean");
    return v.get<bool>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array()) fail("field '" + join(path_, key) + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) fail("field '" + join(path_, key) + "' must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  Fields object(const std::string& key) { return Fields(at(key), join(path_, key)); }

  const std::string& path() const { return path_; }

  // Rejects keys that were never read.
  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) fail("unknown field '" + join(path_, key) + "'");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename F>
auto rethrow_as_parse(const std::string& context, F&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kConfigParse) throw;
    fail(context + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------

ControlPolicy policy_from(Fields f) {
  const std::string type = f.text("type");
  ControlPolicy p = rethrow_as_parse(join(f.path(), "type"), [&]() -> ControlPolicy {
    if (type == "constant") return ControlPolicy::constant(f.number("u"));
    if (type == "continuous-rarest") return ControlPolicy::continuous_rarest();
    if (type == "bang-bang") {
      return ControlPolicy::bang_bang(f.has("tie_tol") ? std::optional(f.number("tie_tol"))
                                                       : std::nullopt);
    }
    if (type == "controlled-rarity") return ControlPolicy::controlled_rarity(f.number("k"));
    if (type == "inverted") return ControlPolicy::inverted(policy_from(f.object("inner")));
    fail("field '" + join(f.path(), "type") + "' has unknown controller '" + type + "'");
  });
  f.finish();
  return p;
}

json policy_to(const ControlPolicy& p) {
  json j;
  j["type"] = p.name();
  if (p.is_constant()) j["u"] = p.constant_value();
  if (p.is_bang_bang() && p.tie_tol()) j["tie_tol"] = *p.tie_tol();
  if (p.is_controlled_rarity()) j["k"] = p.rarity_k();
  if (p.is_inverted()) j["inner"] = policy_to(p.inner());
  return j;
}

ModelKind model_from(const std::string& s) {
  if (s == "one-segment") return ModelKind::kOneSegment;
  if (s == "two-segment") return ModelKind::kTwoSegment;
  if (s == "lumped") return ModelKind::kLumped;
  if (s == "two-class") return ModelKind::kTwoClass;
  fail("field 'model' has unknown value '" + s + "'");
}

void params_from(Fields f, Scenario& s) {
  switch (s.model) {
    case ModelKind::kOneSegment:
      s.swarm.beta0 = f.number("beta0");
      s.swarm.beta = f.number("beta", 0.0);
      s.swarm.gamma = f.number("gamma", 0.0);
      s.swarm.lambda_l = f.number("lambda_l");
      s.swarm.lambda_s = f.number("lambda_s");
      s.swarm.delta = f.number("delta");
      rethrow_as_parse("params", [&] { return validate_one_segment(s.swarm); });
      break;
    case ModelKind::kTwoSegment:
      s.swarm.beta0 = f.number("beta0", 0.0);
      s.swarm.beta = f.number("beta");
      s.swarm.gamma = f.number("gamma");
      s.swarm.lambda_l = f.number("lambda_l");
      s.swarm.lambda_s = f.number("lambda_s");
      s.swarm.delta = f.number("delta");
      rethrow_as_parse("params", [&] { return validate_two_segment(s.swarm); });
      break;
    case ModelKind::kLumped:
      s.lumped.beta_r = f.number("beta_r");
      s.lumped.beta_N1 = f.number("beta_N1");
      s.lumped.lambda_l = f.number("lambda_l");
      s.lumped.lambda_s = f.number("lambda_s");
      s.lumped.delta = f.number("delta");
      rethrow_as_parse("params", [&] { return validate(s.lumped); });
      break;
    case ModelKind::kTwoClass: {
      s.two_class.beta_r = f.number("beta_r");
      s.two_class.beta_N1 = f.number("beta_N1");
      s.two_class.symmetrized = f.flag("symmetrized", false);
      for (auto [key, cls] : {std::pair{"hi", &s.two_class.hi}, std::pair{"lo", &s.two_class.lo}}) {
        Fields c = f.object(key);
        cls->lambda_l = c.number("lambda_l");
        cls->lambda_s = c.number("lambda_s");
        cls->delta = c.number("delta");
        c.finish();
      }
      rethrow_as_parse("params", [&] { return validate(s.two_class); });
      break;
    }
  }
  f.finish();
}

json params_to(const Scenario& s) {
  json j;
  switch (s.model) {
    case ModelKind::kOneSegment:
    case ModelKind::kTwoSegment:
      j = {{"beta0", s.swarm.beta0}, {"beta", s.swarm.beta}, {"gamma", s.swarm.gamma},
           {"lambda_l", s.swarm.lambda_l}, {"lambda_s", s.swarm.lambda_s},
           {"delta", s.swarm.delta}};
      break;
    case ModelKind::kLumped:
      j = {{"beta_r", s.lumped.beta_r}, {"beta_N1", s.lumped.beta_N1},
           {"lambda_l", s.lumped.lambda_l}, {"lambda_s", s.lumped.lambda_s},
           {"delta", s.lumped.delta}};
      break;
    case ModelKind::kTwoClass: {
      auto cls = [](const ClassParams& c) {
        return json{{"lambda_l", c.lambda_l}, {"lambda_s", c.lambda_s}, {"delta", c.delta}};
      };
      j = {{"beta_r", s.two_class.beta_r}, {"beta_N1", s.two_class.beta_N1},
           {"hi", cls(s.two_class.hi)}, {"lo", cls(s.two_class.lo)},
           {"symmetrized", s.two_class.symmetrized}};
      break;
    }
  }
  return j;
}

IntegratorConfig integrator_from(Fields f) {
  IntegratorConfig c;
  const std::string method = f.text("method", "rk45");
  if (method == "rk4") c.method = Method::kRk4;
  else if (method == "rk45") c.method = Method::kRk45;
  else fail("field 'integrator.method' must be 'rk4' or 'rk45'");
  c.step = f.number("step", c.step);
  c.rel_tol = f.number("rel_tol", c.rel_tol);
  c.abs_tol = f.number("abs_tol", c.abs_tol);
  c.t_end = f.number("t_end", c.t_end);
  c.steady_tol = f.number("steady_tol", c.steady_tol);
  c.record_every = f.number("record_every", c.record_every);
  c.min_step = f.number("min_step", c.min_step);
  c.max_steps = f.count("max_steps", c.max_steps);
  f.finish();
  rethrow_as_parse("integrator", [&] {
    c.validate();
    return 0;
  });
  return c;
}

json integrator_to(const IntegratorConfig& c) {
  return {{"method", c.method == Method::kRk4 ? "rk4" : "rk45"},
          {"step", c.step},
          {"rel_tol", c.rel_tol},
          {"abs_tol", c.abs_tol},
          {"t_end", c.t_end},
          {"steady_tol", c.steady_tol},
          {"record_every", c.record_every},
          {"min_step", c.min_step},
          {"max_steps", c.max_steps}};
}

std::pair<double, double> point_from(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("field '" + path + "' must hold [x_a, x_b] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

PhaseSection phase_from(Fields f) {
  PhaseSection ph;
  auto& g = ph.grid;
  g.xa_min = f.number("xa_min", g.xa_min);
  g.xa_max = f.number("xa_max", g.xa_max);
  g.xb_min = f.number("xb_min", g.xb_min);
  g.xb_max = f.number("xb_max", g.xb_max);
  g.nx = f.count("nx", g.nx);
  g.ny = f.count("ny", g.ny);
  ph.trajectories = f.flag("trajectories", true);
  if (f.has("slaved")) {
    Fields s = f.object("slaved");
    ph.slaved = LeecherSeeder{s.number("x_l"), s.number("x_s")};
    s.finish();
  }
  if (f.has("starts")) {
    const json& arr = f.at("starts");
    if (!arr.is_array()) fail("field 'phase_field.starts' must be an array");
    for (const auto& e : arr) ph.starts.push_back(point_from(e, "phase_field.starts"));
  }
  f.finish();
  return ph;
}

json phase_to(const PhaseSection& ph) {
  json j = {{"xa_min", ph.grid.xa_min}, {"xa_max", ph.grid.xa_max},
            {"xb_min", ph.grid.xb_min}, {"xb_max", ph.grid.xb_max},
            {"nx", ph.grid.nx},         {"ny", ph.grid.ny},
            {"trajectories", ph.trajectories}};
  if (ph.slaved) j["slaved"] = {{"x_l", ph.slaved->x_l}, {"x_s", ph.slaved->x_s}};
  json starts = json::array();
  for (const auto& [a, b] : ph.starts) starts.push_back({a, b});
  j["starts"] = starts;
  return j;
}

OptimizeSection optimize_from(Fields f) {
  OptimizeSection o;
  o.horizon = f.number("horizon");
  if (!(o.horizon > 0.0 && std::isfinite(o.horizon))) {
    fail("field 'optimize.horizon' must be finite and > 0");
  }
  o.n_intervals = f.count("n_intervals");
  if (o.n_intervals < 1) fail("field 'optimize.n_intervals' must be >= 1");
  auto& c = o.optimizer;
  c.max_iterations = f.count("max_iterations", c.max_iterations);
  c.substeps = f.count("substeps", c.substeps);
  if (c.substeps < 1) fail("field 'optimize.substeps' must be >= 1");
  c.fd_step = f.number("fd_step", c.fd_step);
  if (!(c.fd_step > 0.0)) fail("field 'optimize.fd_step' must be > 0");
  c.stationarity_tol = f.number("stationarity_tol", c.stationarity_tol);
  f.finish();
  return o;
}

json optimize_to(const OptimizeSection& o) {
  return {{"horizon", o.horizon},
          {"n_intervals", o.n_intervals},
          {"max_iterations", o.optimizer.max_iterations},
          {"substeps", o.optimizer.substeps},
          {"fd_step", o.optimizer.fd_step},
          {"stationarity_tol", o.optimizer.stationarity_tol}};
}

SweepSection sweep_from(Fields f) {
  SweepSection sw;
  sw.parameter = f.text("parameter", "u");
  if (sw.parameter != "u" && sw.parameter != "lambda_s") {
    fail("field 'sweep.parameter' must be 'u' or 'lambda_s'");
  }
  sw.values = f.numbers("values");
  sw.per_class = f.flag("per_class", false);
  f.finish();
  return sw;
}

json sweep_to(const SweepSection& sw) {
  return {{"parameter", sw.parameter}, {"values", sw.values}, {"per_class", sw.per_class}};
}

}  // namespace

std::string to_string(ModelKind m) {
  switch (m) {
    case ModelKind::kOneSegment: return "one-segment";
    case ModelKind::kTwoSegment: return "two-segment";
    case ModelKind::kLumped: return "lumped";
    case ModelKind::kTwoClass: return "two-class";
  }
  return "unknown";
}

std::vector<std::string> state_labels(ModelKind model) {
  switch (model) {
    case ModelKind::kOneSegment: return one_segment_system({}).labels;
    case ModelKind::kTwoSegment: return two_segment_system({}).labels;
    case ModelKind::kLumped: return lumped_system({}).labels;
    case ModelKind::kTwoClass: return two_class_system({}).labels;
  }
  return {};
}

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  Fields f(root, "");
  Scenario s;
  s.schema_version = static_cast<int>(f.count("schema_version"));
  if (s.schema_version != kScenarioSchemaVersion) {
    fail("field 'schema_version' must be " + std::to_string(kScenarioSchemaVersion));
  }
  s.name = f.text("name", "");
  s.description = f.text("description", "");
  s.model = model_from(f.text("model"));
  params_from(f.object("params"), s);
  if (f.has("controller")) s.controller = policy_from(f.object("controller"));

  const std::vector<std::string> labels = state_labels(s.model);
  s.initial_state.assign(labels.size(), 0.0);
  if (f.has("initial_state")) {
    Fields init = f.object("initial_state");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      s.initial_state[i] = init.number(labels[i], 0.0);
      if (!(s.initial_state[i] >= 0.0 && std::isfinite(s.initial_state[i]))) {
        fail("field 'initial_state." + labels[i] + "' must be finite and >= 0");
      }
    }
    init.finish();
  }
  if (f.has("integrator")) s.integrator = integrator_from(f.object("integrator"));
  if (f.has("phase_field")) s.phase_field = phase_from(f.object("phase_field"));
  if (f.has("optimize")) s.optimize = optimize_from(f.object("optimize"));
  if (f.has("sweep")) s.sweep = sweep_from(f.object("sweep"));
  if (f.has("outputs")) {
    const json& out = f.at("outputs");
    if (!out.is_object()) fail("field 'outputs' must be an object");
    for (const auto& [k, v] : out.items()) {
      if (!v.is_string()) fail("field 'outputs." + k + "' must be a string");
      s.outputs[k] = v.get<std::string>();
    }
  }
  f.finish();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  json j;
  j["schema_version"] = s.schema_version;
  j["name"] = s.name;
  j["description"] = s.description;
  j["model"] = to_string(s.model);
  j["params"] = params_to(s);
  j["controller"] = policy_to(s.controller);
  const std::vector<std::string> labels = state_labels(s.model);
  json init = json::object();
  for (std::size_t i = 0; i < labels.size() && i < s.initial_state.size(); ++i) {
    init[labels[i]] = s.initial_state[i];
  }
  j["initial_state"] = init;
  j["integrator"] = integrator_to(s.integrator);
  if (s.phase_field) j["phase_field"] = phase_to(*s.phase_field);
  if (s.optimize) j["optimize"] = optimize_to(*s.optimize);
  if (s.sweep) j["sweep"] = sweep_to(*s.sweep);
  if (!s.outputs.empty()) j["outputs"] = s.outputs;
  return j.dump(2) + "\n";
}

ControlPolicy parse_policy(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed controller JSON: ") + e.what());
  }
  return policy_from(Fields(j, "controller"));
}

std::string serialize_policy(const ControlPolicy& policy) { return policy_to(policy).dump(); }

}  // namespace swarm
