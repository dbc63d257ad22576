#include "flatheat/materials.hpp"

#include <algorithm>
#include <cmath>

#include "flatheat/error.hpp"

namespace flatheat {

namespace {

void require_positive(double v, const char* field, const std::string& name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw ConfigError("material '" + name + "': " + field + " must be finite and positive");
  }
}

}  // namespace

void validate(const MaterialProperties& m) {
  if (m.name.empty()) throw ConfigError("material name must not be empty");
  require_positive(m.lambda, "lambda", m.name);
  require_positive(m.rho, "rho", m.name);
  require_positive(m.c, "c", m.name);
}

void validate(const RodGeometry& g) {
  if (!(std::isfinite(g.length) && g.length > 0.0)) {
    throw ConfigError("rod length must be finite and positive");
  }
}

MaterialProperties make_material(std::string name, double lambda, double rho, double c) {
  MaterialProperties m{std::move(name), lambda, rho, c};
  validate(m);
  return m;
}

double diffusivity(const MaterialProperties& m) { return m.lambda / (m.rho * m.c); }

double gamma_coefficient(const MaterialProperties& m, const RodGeometry& g) {
  return g.length * g.length / diffusivity(m);
}

MaterialRegistry MaterialRegistry::builtin() {
  MaterialRegistry reg;
  reg.add(make_material("aluminum", 237.0, 2700.0, 900.0));
  reg.add(make_material("steel-38Si7", 40.0, 7800.0, 460.0));
  return reg;
}

void MaterialRegistry::add(MaterialProperties m) {
  validate(m);
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const MaterialProperties& e) { return e.name == m.name; });
  if (it != entries_.end()) {
    *it = std::move(m);
  } else {
    entries_.push_back(std::move(m));
  }
}

const MaterialProperties* MaterialRegistry::find(std::string_view name) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const MaterialProperties& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

const MaterialProperties& MaterialRegistry::at(std::string_view name) const {
  if (const auto* m = find(name)) return *m;
  throw ConfigError("unknown material '" + std::string(name) + "'");
}

}  // namespace flatheat
