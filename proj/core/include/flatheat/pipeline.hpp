#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "flatheat/flat_series.hpp"
#include "flatheat/gevrey.hpp"
#include "flatheat/heat_sim.hpp"
#include "flatheat/scenario.hpp"

namespace flatheat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

std::string tool_version();

// In-memory results of each stage. The cmd_* functions below wrap these and
// write artifacts; tests and benchmarks call the compute_* layer directly.

struct SeriesPlan {
  MaterialProperties material;
  TransitionSpec spec;
  DerivativeTable table;
  EtaDiagnostics diagnostics;  // eta, mu, r_hat for orders 0..max_order
  TruncationChoice auto_choice;
  int N = 0;                   // scenario N, or auto_choice.N when "auto"
};

SeriesPlan compute_plan(const Scenario& s);

struct SignalSummary {
  double gamma = 0.0;
  double omega_hat = 0.0;
  int N = 0;
  bool truncation_fallback = false;
  double max_abs_u = 0.0;
  double min_u = 0.0;
};

struct SignalRun {
  SeriesPlan plan;
  InputSignal signal;
  SignalSummary summary;
};

SignalRun compute_signal(const Scenario& s);

struct SimulationSummary {
  SignalSummary signal;
  double y_end = 0.0;
  double tracking_error = 0.0;  // max |y(t) - y_ref(t)| over recorded frames
  double energy_residual = 0.0;
  double min_temperature = 0.0;
  bool below_absolute_zero = false;
};

struct SimulationRun {
  SignalRun signal;
  SimulationConfig config;
  SimulationResult result;
  SimulationSummary summary;
};

SimulationRun compute_simulation(const Scenario& s);

enum class DiagnosticKind { eta, mu, rhat };

/// Throws ConfigError for anything but "eta", "mu", "rhat".
DiagnosticKind parse_diagnostic_kind(const std::string& kind);

struct DiagnoseReport {
  EtaDiagnostics diagnostics;
  double gamma = 0.0;
  int max_index = 0;
  int first_subunity_index = -1;
  std::filesystem::path csv;
};

/// Diagnostics table; for `eta` the index range extends until log10 eta
/// turns negative so the sub-unity landmark is always present.
DiagnoseReport compute_diagnose(const Scenario& s, DiagnosticKind kind);

// Artifact writers. Each artifact gets `<file>.meta.json` carrying the tool
// version and the fully resolved scenario.

DiagnoseReport cmd_diagnose(const Scenario& s, DiagnosticKind kind,
                            const std::filesystem::path& out_dir);
SignalRun cmd_signal(const Scenario& s, const std::filesystem::path& out_dir);
SimulationRun cmd_simulate(const Scenario& s, const std::filesystem::path& out_dir);

/// CSV listing `name,lambda,rho,c,alpha`.
std::string cmd_materials(const MaterialRegistry& registry);

nlohmann::json to_json(const SignalSummary& s);
nlohmann::json to_json(const SimulationSummary& s);

}  // namespace flatheat
