#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatheat/flat_series.hpp"
#include "flatheat/gevrey.hpp"
#include "flatheat/heat_sim.hpp"
#include "flatheat/materials.hpp"

namespace flatheat {

/// One experiment: material + rod + transition + truncation + simulation
/// settings. Defaults reproduce the aluminum reference run.
///
/// JSON layout:
///   {
///     "name": "aluminum",
///     "materials": [{"name": ..., "lambda": ..., "rho": ..., "c": ...}],
///     "material": "aluminum" | {"name": ..., "lambda": ..., ...},
///     "geometry": {"length": 0.2},
///     "trajectory": {"omega": 2, "T": 1000, "y0": 300, "delta_y": 100,
///                    "N": 40 | "auto", "samples": 1001, "max_order": 40,
///                    "epsilon": 1e-3, "window": 3},
///     "simulation": {"grid_points": 101, "dt": 0.1, "t_end": 1000,
///                    "theta0": 300 | [...], "probes": [0.05, 0.1, 0.2],
///                    "max_frames": 2001},
///     "output": {"dir": "out", "field": false, "derivatives": false}
///   }
/// Every key is optional. t_end defaults to T and theta0 to y0.
struct Scenario {
  std::string name;
  std::vector<MaterialProperties> materials;
  std::string material = "aluminum";
  RodGeometry geometry{0.2};
  TransitionSpec trajectory{};
  std::optional<int> N = 40;  // nullopt selects automatically
  std::size_t samples = kDefaultSamples;
  int max_order = 40;
  double epsilon = kDefaultTruncationEpsilon;
  int window = kDefaultTruncationWindow;

  int grid_points = 101;
  double dt = 0.1;
  std::optional<double> t_end;
  std::optional<std::vector<double>> theta0;
  std::vector<double> probes{0.05, 0.1, 0.2};
  std::size_t max_frames = 2001;

  std::string out_dir = ".";
  bool write_field = false;
  bool write_derivatives = false;

  /// `name` if set, otherwise the material name.
  std::string label() const;
};

/// Throws ConfigError on malformed or out-of-range values and unknown keys.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Reads and parses a scenario file; ConfigError on I/O or parse failure.
Scenario load_scenario(const std::filesystem::path& path);

/// Built-in registry plus the scenario's own materials.
MaterialRegistry scenario_registry(const Scenario& s);

/// Checks every invariant that does not need numerics: material resolvable,
/// omega > 1, T > 0, sample/order counts, simulation settings.
void validate(const Scenario& s);

/// Simulation settings with defaults resolved against the trajectory.
SimulationConfig simulation_config(const Scenario& s);

}  // namespace flatheat
