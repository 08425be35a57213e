#include "run_config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cloakwave/errors.hpp"
#include "cloakwave/experiments.hpp"
#include "cloakwave/specfun.hpp"

namespace cloakwave::cli {
namespace {

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ValidationError(where + ": expected a mapping");
  for (const auto& item : node) {
    const auto key = item.first.as<std::string>();
    if (!allowed.count(key)) throw ValidationError(where + ": unknown key '" + key + "'");
  }
}

Real number(const YAML::Node& node, const std::string& what) {
  try {
    return static_cast<Real>(node.as<double>());
  } catch (const YAML::Exception&) {
    throw ValidationError(what + ": expected a number");
  }
}

int integer(const YAML::Node& node, const std::string& what) {
  try {
    return node.as<int>();
  } catch (const YAML::Exception&) {
    throw ValidationError(what + ": expected an integer");
  }
}

Complex complex_number(const YAML::Node& node, const std::string& what) {
  if (node.IsSequence()) {
    if (node.size() != 2) throw ValidationError(what + ": expected [re, im]");
    return {number(node[0], what), number(node[1], what)};
  }
  return {number(node, what), 0};
}

Vec vector3(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() < 2 || node.size() > 3) {
    throw ValidationError(what + ": expected a list of 2 or 3 numbers");
  }
  Vec v{0, 0, 0};
  for (std::size_t i = 0; i < node.size(); ++i) v[i] = number(node[i], what);
  return v;
}

std::vector<Real> number_list(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence()) throw ValidationError(what + ": expected a list");
  std::vector<Real> out;
  for (const auto& item : node) out.push_back(number(item, what));
  return out;
}

void parse_incident(const YAML::Node& node, fields::IncidentSpec& inc) {
  check_keys(node, "incident", {"kind", "direction", "location", "amplitude"});
  if (node["kind"]) {
    const auto kind = node["kind"].as<std::string>();
    if (kind == "plane_wave") {
      inc.kind = fields::IncidentKind::PlaneWave;
    } else if (kind == "point_source") {
      inc.kind = fields::IncidentKind::PointSource;
    } else {
      throw ValidationError("incident.kind must be plane_wave or point_source");
    }
  }
  if (node["direction"]) inc.direction = vector3(node["direction"], "incident.direction");
  if (node["location"]) inc.location = vector3(node["location"], "incident.location");
  if (node["amplitude"]) inc.amplitude = complex_number(node["amplitude"], "incident.amplitude");
}

void parse_grid(const YAML::Node& node, fields::GridSpec& grid) {
  check_keys(node, "grid", {"lower", "upper", "points"});
  if (node["lower"]) grid.lower = vector3(node["lower"], "grid.lower");
  if (node["upper"]) grid.upper = vector3(node["upper"], "grid.upper");
  if (node["points"]) {
    const auto& p = node["points"];
    if (!p.IsSequence() || p.size() < 2 || p.size() > 3) throw ValidationError("grid.points: expected 2 or 3 counts");
    grid.points = {1, 1, 1};
    for (std::size_t i = 0; i < p.size(); ++i) grid.points[i] = integer(p[i], "grid.points");
  }
}

RunConfig from_node(const YAML::Node& root, const Overrides& overrides) {
  if (!root.IsDefined() || root.IsNull()) {
    return default_run_config(overrides.experiment.empty() ? "sweep" : overrides.experiment,
                              overrides.dimension > 0 ? overrides.dimension : 3);
  }
  check_keys(root, "config", {"experiment", "dimension", "k", "epsilon", "eps_list", "interior", "incident", "probe",
                              "truncation", "tuning", "threads", "blowup", "resonances", "scan", "grid", "output"});
  std::string experiment = root["experiment"] ? root["experiment"].as<std::string>() : "sweep";
  if (!overrides.experiment.empty()) experiment = overrides.experiment;
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end()) {
    throw ValidationError("unknown experiment '" + experiment + "'");
  }
  int dimension = root["dimension"] ? integer(root["dimension"], "dimension") : 3;
  if (overrides.dimension > 0) dimension = overrides.dimension;
  if (dimension != 2 && dimension != 3) throw ValidationError("dimension must be 2 or 3");

  RunConfig c = default_run_config(experiment, dimension);
  if (root["k"]) c.cloak.k = number(root["k"], "k");
  if (root["epsilon"]) c.cloak.epsilon = number(root["epsilon"], "epsilon");
  if (root["eps_list"]) c.eps_list = number_list(root["eps_list"], "eps_list");
  if (root["interior"]) {
    const auto& layers = root["interior"];
    if (!layers.IsSequence() || layers.size() == 0) throw ValidationError("interior: expected a non-empty list");
    c.cloak.interior.clear();
    for (const auto& l : layers) {
      check_keys(l, "interior layer", {"radius", "a", "sigma"});
      mie::Layer layer;
      if (l["radius"]) layer.outer_radius = number(l["radius"], "interior.radius");
      if (l["a"]) layer.a = number(l["a"], "interior.a");
      if (l["sigma"]) layer.sigma = complex_number(l["sigma"], "interior.sigma");
      c.cloak.interior.push_back(layer);
    }
  }
  if (root["incident"]) parse_incident(root["incident"], c.cloak.incident);
  if (root["probe"]) {
    check_keys(root["probe"], "probe", {"inner", "outer"});
    if (root["probe"]["inner"]) c.probe_inner = number(root["probe"]["inner"], "probe.inner");
    if (root["probe"]["outer"]) c.probe_outer = number(root["probe"]["outer"], "probe.outer");
  }
  if (root["truncation"]) c.truncation = integer(root["truncation"], "truncation");
  if (root["tuning"]) {
    const auto t = root["tuning"].as<std::string>();
    if (t == "exact") {
      c.tuning = mie::Tuning::Exact;
    } else if (t == "leading-order") {
      c.tuning = mie::Tuning::LeadingOrder;
    } else {
      throw ValidationError("tuning must be exact or leading-order");
    }
  }
  if (root["threads"]) c.threads = integer(root["threads"], "threads");
  if (root["blowup"]) {
    check_keys(root["blowup"], "blowup", {"mode"});
    if (root["blowup"]["mode"]) c.blowup_mode = integer(root["blowup"]["mode"], "blowup.mode");
  }
  if (const auto& r = root["resonances"]) {
    check_keys(r, "resonances", {"k_min", "k_max", "modes"});
    if (r["k_min"]) c.resonance_k_min = number(r["k_min"], "resonances.k_min");
    if (r["k_max"]) c.resonance_k_max = number(r["k_max"], "resonances.k_max");
    if (r["modes"]) c.resonance_modes = integer(r["modes"], "resonances.modes");
  }
  if (const auto& s = root["scan"]) {
    check_keys(s, "scan", {"k_min", "k_max", "points", "modes"});
    if (s["k_min"]) c.scan_k_min = number(s["k_min"], "scan.k_min");
    if (s["k_max"]) c.scan_k_max = number(s["k_max"], "scan.k_max");
    if (s["points"]) c.scan_points = integer(s["points"], "scan.points");
    if (s["modes"]) c.scan_modes = integer(s["modes"], "scan.modes");
  }
  if (root["grid"]) parse_grid(root["grid"], c.grid);
  if (root["output"]) {
    check_keys(root["output"], "output", {"dir"});
    if (root["output"]["dir"]) c.out_dir = root["output"]["dir"].as<std::string>();
  }
  return c;
}

nlohmann::json complex_json(Complex z) { return {double(z.real()), double(z.imag())}; }

nlohmann::json vec_json(const Vec& v) { return {double(v[0]), double(v[1]), double(v[2])}; }

}  // namespace

RunConfig default_run_config(const std::string& experiment, int dimension) {
  RunConfig c;
  c.experiment = experiment;
  c.cloak.dimension = dimension;
  if (dimension == 2) {
    c.cloak.incident.direction = {1, 0, 0};
    c.cloak.incident.location = {3.5L, 0, 0};
    c.grid = {{-3.5L, -3.5L, 0}, {3.5L, 3.5L, 0}, {81, 81, 1}};
  } else {
    c.cloak.incident.direction = {0, 0, 1};
    c.cloak.incident.location = {0, 0, 3.5L};
    c.grid = {{-3.5L, 0, -3.5L}, {3.5L, 0, 3.5L}, {81, 1, 81}};
  }
  if (experiment == "instability" || experiment == "blowup") {
    c.eps_list = {0.01L, 0.001L, 0.0001L};
  }
  c.blowup_mode = experiments::default_blowup_mode(dimension);
  // Round every default through binary64 so that echoes re-parse identically.
  for (Real& e : c.eps_list) e = static_cast<double>(e);
  c.cloak.epsilon = static_cast<double>(c.cloak.epsilon);
  c.resonance_k_min = static_cast<double>(c.resonance_k_min);
  c.scan_k_min = static_cast<double>(c.scan_k_min);
  return c;
}

RunConfig parse_run_config(const std::string& text, const Overrides& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  RunConfig c;
  try {
    c = from_node(root, overrides);
  } catch (const YAML::Exception& e) {
    throw ValidationError(std::string("config error: ") + e.what());
  }
  validate(c);
  return c;
}

RunConfig load_run_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str(), overrides);
}

void validate(const RunConfig& c) {
  if (std::find(kExperiments.begin(), kExperiments.end(), c.experiment) == kExperiments.end()) {
    throw ValidationError("unknown experiment '" + c.experiment + "'");
  }
  cloakwave::validate(c.cloak);
  if (c.cloak.k > 50) throw ValidationError("k must not exceed 50");
  for (std::size_t i = 0; i < c.eps_list.size(); ++i) {
    if (!(c.eps_list[i] > 0 && c.eps_list[i] <= 1)) throw ValidationError("eps_list values must lie in (0, 1]");
    if (i > 0 && !(c.eps_list[i] < c.eps_list[i - 1])) throw ValidationError("eps_list must be strictly decreasing");
  }
  if (c.experiment == "sweep" && c.eps_list.size() < 3) throw ValidationError("sweep needs at least 3 eps values");
  if ((c.experiment == "instability" || c.experiment == "blowup") && c.eps_list.empty()) {
    throw ValidationError("eps_list must not be empty");
  }
  if (!(c.probe_inner >= 1 && c.probe_outer > c.probe_inner && c.probe_outer <= 5)) {
    throw ValidationError("probe radii must satisfy 1 <= inner < outer <= 5");
  }
  if (c.truncation < 0 || c.truncation > specfun::kMaxOrder) throw ValidationError("truncation must lie in [0, 200]");
  if (c.threads < 1) throw ValidationError("threads must be positive");
  if (c.blowup_mode < 0 || c.blowup_mode > 50) throw ValidationError("blowup.mode must lie in [0, 50]");
  if (!(c.resonance_k_min > 0 && c.resonance_k_max > c.resonance_k_min)) {
    throw ValidationError("resonances: need 0 < k_min < k_max");
  }
  if (!(c.scan_k_min > 0 && c.scan_k_max >= c.scan_k_min)) throw ValidationError("scan: need 0 < k_min <= k_max");
  if (c.scan_points < 0) throw ValidationError("scan.points must be nonnegative");
  for (int m : {c.resonance_modes, c.scan_modes}) {
    if (m < 0 || m > specfun::kMaxOrder) throw ValidationError("mode counts must lie in [0, 200]");
  }
  long total = 1;
  Real corner = 0;
  for (int a = 0; a < c.cloak.dimension; ++a) {
    if (c.grid.points[a] < 1) throw ValidationError("grid.points must be positive");
    total *= c.grid.points[a];
    if (total > fields::kMaxGridPoints) throw ValidationError("grid: more than 1e6 points requested");
    const Real m = std::max(std::abs(c.grid.lower[a]), std::abs(c.grid.upper[a]));
    corner += m * m;
  }
  if (std::sqrt(corner) > 5) throw ValidationError("grid: points must lie inside B_5");
  if (c.out_dir.empty()) throw ValidationError("output.dir must not be empty");
}

nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  j["experiment"] = c.experiment;
  j["dimension"] = c.cloak.dimension;
  j["k"] = double(c.cloak.k);
  j["epsilon"] = double(c.cloak.epsilon);
  j["eps_list"] = nlohmann::json::array();
  for (Real e : c.eps_list) j["eps_list"].push_back(double(e));
  j["interior"] = nlohmann::json::array();
  for (const auto& l : c.cloak.interior) {
    j["interior"].push_back({{"radius", double(l.outer_radius)}, {"a", double(l.a)}, {"sigma", complex_json(l.sigma)}});
  }
  const auto& inc = c.cloak.incident;
  j["incident"] = {{"kind", inc.kind == fields::IncidentKind::PlaneWave ? "plane_wave" : "point_source"},
                   {"direction", vec_json(inc.direction)},
                   {"location", vec_json(inc.location)},
                   {"amplitude", complex_json(inc.amplitude)}};
  j["probe"] = {{"inner", double(c.probe_inner)}, {"outer", double(c.probe_outer)}};
  j["truncation"] = c.truncation;
  j["tuning"] = c.tuning == mie::Tuning::Exact ? "exact" : "leading-order";
  j["threads"] = c.threads;
  j["blowup"] = {{"mode", c.blowup_mode}};
  j["resonances"] = {
      {"k_min", double(c.resonance_k_min)}, {"k_max", double(c.resonance_k_max)}, {"modes", c.resonance_modes}};
  j["scan"] = {{"k_min", double(c.scan_k_min)},
               {"k_max", double(c.scan_k_max)},
               {"points", c.scan_points},
               {"modes", c.scan_modes}};
  j["grid"] = {{"lower", vec_json(c.grid.lower)},
               {"upper", vec_json(c.grid.upper)},
               {"points", {c.grid.points[0], c.grid.points[1], c.grid.points[2]}}};
  j["output"] = {{"dir", c.out_dir}};
  return j;
}

}  // namespace cloakwave::cli
