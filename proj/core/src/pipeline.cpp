#include "flatheat/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flatheat/csv.hpp"
#include "flatheat/error.hpp"

#ifndef FLATHEAT_VERSION
#define FLATHEAT_VERSION "0.0.0"
#endif

namespace flatheat {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Upper bound on the eta table when searching for the sub-unity index.
constexpr int kMaxEtaSearch = 5000;

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_with_sidecar(const fs::path& path, const std::string& content, const Scenario& s) {
  write_file_atomic(path, content);
  const json meta = {{"tool", "flatheat"},
                     {"version", tool_version()},
                     {"artifact", path.filename().string()},
                     {"scenario", scenario_to_json(s)}};
  fs::path sidecar = path;
  sidecar += ".meta.json";
  write_file_atomic(sidecar, dump(meta));
}

fs::path artifact(const fs::path& dir, const Scenario& s, const std::string& suffix) {
  return dir / (s.label() + "_" + suffix);
}

}  // namespace

std::string tool_version() { return FLATHEAT_VERSION; }

SeriesPlan compute_plan(const Scenario& s) {
  validate(s);
  const auto registry = scenario_registry(s);
  const auto& material = registry.at(s.material);
  const auto times = uniform_grid(s.trajectory.T, s.samples);
  auto table = bump_derivatives(s.trajectory, times, s.max_order);

  auto diag = eta_sequence(material, s.geometry, s.max_order);
  diag = r_hat_sequence(mu_sequence(std::move(diag), table, material, s.trajectory.delta_y));
  const auto choice = select_truncation(diag, s.epsilon, s.window);
  // a fallback choice equals terms(), one past the last computed order
  const int N = s.N ? *s.N : std::min(choice.N, s.max_order);
  return SeriesPlan{material, s.trajectory, std::move(table), std::move(diag), choice, N};
}

SignalRun compute_signal(const Scenario& s) {
  auto plan = compute_plan(s);
  auto signal = input_signal(plan.diagnostics, plan.table, plan.material, plan.spec, plan.N);

  SignalSummary summary;
  summary.gamma = plan.diagnostics.gamma;
  summary.omega_hat = plan.table.omega_hat();
  summary.N = plan.N;
  summary.truncation_fallback = !s.N && plan.auto_choice.fallback;
  for (double u : signal.values) summary.max_abs_u = std::max(summary.max_abs_u, std::abs(u));
  summary.min_u = signal.values.empty()
                      ? 0.0
                      : *std::min_element(signal.values.begin(), signal.values.end());
  return SignalRun{std::move(plan), std::move(signal), summary};
}

SimulationRun compute_simulation(const Scenario& s) {
  auto sig = compute_signal(s);
  auto cfg = simulation_config(s);
  auto result = simulate(cfg, sig.signal);

  SimulationSummary summary;
  summary.signal = sig.summary;
  summary.y_end = result.output_trace.back();
  for (std::size_t f = 0; f < result.frames(); ++f) {
    const double ref = reference_output(s.trajectory, sig.plan.table, result.times[f], 0);
    summary.tracking_error = std::max(summary.tracking_error, std::abs(result.output_trace[f] - ref));
  }
  summary.energy_residual = result.energy_residual;
  summary.min_temperature = result.min_temperature;
  summary.below_absolute_zero = result.min_temperature < 0.0;
  return SimulationRun{std::move(sig), std::move(cfg), std::move(result), summary};
}

DiagnosticKind parse_diagnostic_kind(const std::string& kind) {
  if (kind == "eta") return DiagnosticKind::eta;
  if (kind == "mu") return DiagnosticKind::mu;
  if (kind == "rhat") return DiagnosticKind::rhat;
  throw ConfigError("unknown diagnostic kind '" + kind + "' (expected eta, mu or rhat)");
}

DiagnoseReport compute_diagnose(const Scenario& s, DiagnosticKind kind) {
  validate(s);
  const auto registry = scenario_registry(s);
  const auto& material = registry.at(s.material);

  DiagnoseReport report;
  if (kind == DiagnosticKind::eta) {
    int last = s.max_order;
    auto diag = eta_sequence(material, s.geometry, last);
    while (first_subunity_index(diag) < 0 && last < kMaxEtaSearch) {
      last = std::min(2 * last + 1, kMaxEtaSearch);
      diag = eta_sequence(material, s.geometry, last);
    }
    report.diagnostics = std::move(diag);
  } else {
    auto plan = compute_plan(s);
    report.diagnostics = std::move(plan.diagnostics);
    if (kind == DiagnosticKind::mu) report.diagnostics.r_hat.clear();
  }
  report.gamma = report.diagnostics.gamma;
  report.max_index = report.diagnostics.max_index;
  report.first_subunity_index = first_subunity_index(report.diagnostics);
  return report;
}

DiagnoseReport cmd_diagnose(const Scenario& s, DiagnosticKind kind, const fs::path& out_dir) {
  auto report = compute_diagnose(s, kind);
  const char* suffix = kind == DiagnosticKind::eta ? "eta.csv"
                       : kind == DiagnosticKind::mu ? "mu.csv"
                                                    : "rhat.csv";
  report.csv = artifact(out_dir, s, suffix);
  write_with_sidecar(report.csv, diagnostics_csv(report.diagnostics), s);
  return report;
}

json to_json(const SignalSummary& s) {
  return {{"gamma", s.gamma},         {"omega_hat", s.omega_hat},
          {"N", s.N},                 {"truncation_fallback", s.truncation_fallback},
          {"max_abs_u", s.max_abs_u}, {"min_u", s.min_u}};
}

json to_json(const SimulationSummary& s) {
  return {{"signal", to_json(s.signal)},
          {"y_end", s.y_end},
          {"tracking_error", s.tracking_error},
          {"energy_residual", s.energy_residual},
          {"min_temperature", s.min_temperature},
          {"below_absolute_zero", s.below_absolute_zero}};
}

SignalRun cmd_signal(const Scenario& s, const fs::path& out_dir) {
  auto run = compute_signal(s);
  write_with_sidecar(artifact(out_dir, s, "signal.csv"), signal_csv(run.signal), s);
  write_with_sidecar(artifact(out_dir, s, "signal.json"), dump(to_json(run.summary)), s);
  if (s.write_derivatives) {
    write_with_sidecar(artifact(out_dir, s, "derivatives.csv"), derivative_table_csv(run.plan.table),
                       s);
  }
  return run;
}

SimulationRun cmd_simulate(const Scenario& s, const fs::path& out_dir) {
  auto run = compute_simulation(s);
  write_with_sidecar(artifact(out_dir, s, "signal.csv"), signal_csv(run.signal.signal), s);
  write_with_sidecar(artifact(out_dir, s, "sim.csv"), probes_csv(run.result), s);
  write_with_sidecar(artifact(out_dir, s, "sim.json"), dump(to_json(run.summary)), s);
  if (s.write_field) {
    write_with_sidecar(artifact(out_dir, s, "field.csv"), field_csv(run.result), s);
  }
  return run;
}

std::string cmd_materials(const MaterialRegistry& registry) {
  std::string out = "name,lambda,rho,c,alpha\n";
  for (const auto& m : registry.entries()) {
    out += m.name + ',' + format_short(m.lambda) + ',' + format_short(m.rho) + ',' +
           format_short(m.c) + ',' + format_double(diffusivity(m)) + '\n';
  }
  return out;
}

}  // namespace flatheat
