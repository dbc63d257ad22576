#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace flatheat {

/// Thermal properties of a homogeneous rod material, SI units.
///
/// Construct through make_material() to get the positivity checks; the
/// aggregate form is kept for designated initializers in tests and configs
/// that are validated later.
struct MaterialProperties {
  std::string name;
  double lambda = 0.0;  // thermal conductivity, W/(m K)
  double rho = 0.0;     // density, kg/m^3
  double c = 0.0;       // specific heat capacity, J/(kg K)

  friend bool operator==(const MaterialProperties&, const MaterialProperties&) = default;
};

struct RodGeometry {
  double length = 0.0;  // m

  friend bool operator==(const RodGeometry&, const RodGeometry&) = default;
};

/// Throws ConfigError unless lambda, rho, c are finite and positive.
MaterialProperties make_material(std::string name, double lambda, double rho, double c);
void validate(const MaterialProperties& m);
void validate(const RodGeometry& g);

/// alpha = lambda / (rho c), m^2/s.
double diffusivity(const MaterialProperties& m);

/// gamma = L^2 / alpha, in seconds. The only material/geometry quantity that
/// shapes the rescaled coefficient sequence.
double gamma_coefficient(const MaterialProperties& m, const RodGeometry& g);

/// Name-keyed material table. Ships with the two reference materials
/// ("aluminum", "steel-38Si7"); additional entries come from scenario files.
class MaterialRegistry {
 public:
  static MaterialRegistry builtin();

  /// Adds or replaces an entry with the same name.
  void add(MaterialProperties m);

  /// nullptr if absent.
  const MaterialProperties* find(std::string_view name) const;
  /// Throws ConfigError if absent.
  const MaterialProperties& at(std::string_view name) const;

  const std::vector<MaterialProperties>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<MaterialProperties> entries_;
};

}  // namespace flatheat
