#include "flatheat/scenario.hpp"

#include <fstream>
#include <set>

#include "flatheat/error.hpp"

namespace flatheat {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, _] : obj.items()) {
    if (!keys.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

const json& object_at(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
  return v;
}

template <class T>
void read(const json& obj, const char* key, T& dst) {
  if (obj.contains(key)) dst = obj.at(key).get<T>();
}

MaterialProperties material_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("material entries must be objects");
  reject_unknown(j, {"name", "lambda", "rho", "c"}, "material");
  return make_material(j.at("name").get<std::string>(), j.at("lambda").get<double>(),
                       j.at("rho").get<double>(), j.at("c").get<double>());
}

json material_to_json(const MaterialProperties& m) {
  return {{"name", m.name}, {"lambda", m.lambda}, {"rho", m.rho}, {"c", m.c}};
}

Scenario parse(const json& j) {
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  reject_unknown(j, {"name", "materials", "material", "geometry", "trajectory", "simulation",
                     "output"},
                 "scenario");
  Scenario s;
  read(j, "name", s.name);

  if (j.contains("materials")) {
    for (const auto& m : j.at("materials")) s.materials.push_back(material_from_json(m));
  }
  if (j.contains("material")) {
    const json& m = j.at("material");
    if (m.is_string()) {
      s.material = m.get<std::string>();
    } else {
      auto inline_material = material_from_json(m);
      s.material = inline_material.name;
      s.materials.push_back(std::move(inline_material));
    }
  }

  if (j.contains("geometry")) {
    const json& g = object_at(j, "geometry");
    reject_unknown(g, {"length"}, "geometry");
    read(g, "length", s.geometry.length);
  }

  if (j.contains("trajectory")) {
    const json& t = object_at(j, "trajectory");
    reject_unknown(t, {"omega", "T", "y0", "delta_y", "N", "samples", "max_order", "epsilon",
                       "window"},
                   "trajectory");
    read(t, "omega", s.trajectory.omega);
    read(t, "T", s.trajectory.T);
    read(t, "y0", s.trajectory.y0);
    read(t, "delta_y", s.trajectory.delta_y);
    if (t.contains("N")) {
      const json& n = t.at("N");
      if (n.is_string()) {
        if (n.get<std::string>() != "auto") throw ConfigError("trajectory.N must be an integer or \"auto\"");
        s.N.reset();
      } else {
        s.N = n.get<int>();
      }
    }
    read(t, "samples", s.samples);
    read(t, "max_order", s.max_order);
    read(t, "epsilon", s.epsilon);
    read(t, "window", s.window);
  }

  if (j.contains("simulation")) {
    const json& sim = object_at(j, "simulation");
    reject_unknown(sim, {"grid_points", "dt", "t_end", "theta0", "probes", "max_frames"},
                   "simulation");
    read(sim, "grid_points", s.grid_points);
    read(sim, "dt", s.dt);
    if (sim.contains("t_end")) s.t_end = sim.at("t_end").get<double>();
    if (sim.contains("theta0")) {
      const json& th = sim.at("theta0");
      s.theta0 = th.is_array() ? th.get<std::vector<double>>()
                               : std::vector<double>{th.get<double>()};
    }
    read(sim, "probes", s.probes);
    read(sim, "max_frames", s.max_frames);
  }

  if (j.contains("output")) {
    const json& o = object_at(j, "output");
    reject_unknown(o, {"dir", "field", "derivatives"}, "output");
    read(o, "dir", s.out_dir);
    read(o, "field", s.write_field);
    read(o, "derivatives", s.write_derivatives);
  }
  return s;
}

}  // namespace

std::string Scenario::label() const { return name.empty() ? material : name; }

Scenario scenario_from_json(const json& j) {
  Scenario s;
  try {
    s = parse(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  validate(s);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json mats = json::array();
  for (const auto& m : s.materials) mats.push_back(material_to_json(m));

  json traj = {{"omega", s.trajectory.omega},     {"T", s.trajectory.T},
               {"y0", s.trajectory.y0},           {"delta_y", s.trajectory.delta_y},
               {"samples", s.samples},            {"max_order", s.max_order},
               {"epsilon", s.epsilon},            {"window", s.window}};
  if (s.N) {
    traj["N"] = *s.N;
  } else {
    traj["N"] = "auto";
  }

  json sim = {{"grid_points", s.grid_points},
              {"dt", s.dt},
              {"probes", s.probes},
              {"max_frames", s.max_frames}};
  if (s.t_end) sim["t_end"] = *s.t_end;
  if (s.theta0) sim["theta0"] = *s.theta0;

  json out = {{"material", s.material},
              {"materials", mats},
              {"geometry", {{"length", s.geometry.length}}},
              {"trajectory", traj},
              {"simulation", sim},
              {"output",
               {{"dir", s.out_dir}, {"field", s.write_field}, {"derivatives", s.write_derivatives}}}};
  if (!s.name.empty()) out["name"] = s.name;
  return out;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

MaterialRegistry scenario_registry(const Scenario& s) {
  auto reg = MaterialRegistry::builtin();
  for (const auto& m : s.materials) reg.add(m);
  return reg;
}

void validate(const Scenario& s) {
  const auto reg = scenario_registry(s);
  reg.at(s.material);
  validate(s.geometry);
  validate(s.trajectory);
  if (s.samples < 3) throw ConfigError("trajectory.samples must be >= 3");
  if (s.max_order < 0) throw ConfigError("trajectory.max_order must be >= 0");
  if (s.N && (*s.N < 0 || *s.N > s.max_order)) {
    throw ConfigError("trajectory.N = " + std::to_string(*s.N) +
                      " outside computed derivative orders 0.." + std::to_string(s.max_order));
  }
  if (!(s.epsilon > 0.0 && s.epsilon < 1.0)) throw ConfigError("trajectory.epsilon must lie in (0, 1)");
  if (s.window < 1) throw ConfigError("trajectory.window must be >= 1");
  validate(simulation_config(s));
}

SimulationConfig simulation_config(const Scenario& s) {
  const auto reg = scenario_registry(s);
  SimulationConfig cfg;
  cfg.material = reg.at(s.material);
  cfg.geometry = s.geometry;
  cfg.grid_points = s.grid_points;
  cfg.dt = s.dt;
  cfg.t_end = s.t_end.value_or(s.trajectory.T);
  cfg.theta0 = s.theta0.value_or(std::vector<double>{s.trajectory.y0});
  cfg.probes = s.probes;
  cfg.max_frames = s.max_frames;
  return cfg;
}

}  // namespace flatheat
