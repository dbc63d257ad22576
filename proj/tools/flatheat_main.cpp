// flatheat: feedforward boundary-flux synthesis for a 1D rod.
//
//   flatheat materials [--scenario s.json]
//   flatheat diagnose  --kind eta|mu|rhat [--scenario s.json ...] [overrides]
//   flatheat signal    [--scenario s.json ...] [overrides]
//   flatheat simulate  [--scenario s.json ...] [overrides]
//
// Several --scenario files run concurrently, one isolated chain each.
// Exit codes: 0 ok, 2 config error, 3 numerical failure.

#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatheat/error.hpp"
#include "flatheat/pipeline.hpp"
#include "flatheat/scenario.hpp"

namespace {

struct Overrides {
  std::vector<std::string> scenario_files;
  std::optional<std::string> out_dir;
  std::optional<std::string> material;
  std::optional<double> length;
  std::optional<double> omega;
  std::optional<double> T;
  std::optional<double> delta_y;
  std::optional<std::string> N;
  std::optional<std::size_t> samples;
};

void add_scenario_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--scenario", o.scenario_files, "Scenario JSON file(s)")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out_dir, "Output directory");
  cmd->add_option("--material", o.material, "Material name");
  cmd->add_option("--length", o.length, "Rod length L [m]");
  cmd->add_option("--omega", o.omega, "Transition steepness omega (> 1)");
  cmd->add_option("--T", o.T, "Transition time T [s]");
  cmd->add_option("--delta-y", o.delta_y, "Output rise [K]");
  cmd->add_option("--N", o.N, "Truncation order or 'auto'");
  cmd->add_option("--samples", o.samples, "Time samples on [0, T]");
}

flatheat::Scenario apply(flatheat::Scenario s, const Overrides& o) {
  if (o.out_dir) s.out_dir = *o.out_dir;
  if (o.material) s.material = *o.material;
  if (o.length) s.geometry.length = *o.length;
  if (o.omega) s.trajectory.omega = *o.omega;
  if (o.T) s.trajectory.T = *o.T;
  if (o.delta_y) s.trajectory.delta_y = *o.delta_y;
  if (o.samples) s.samples = *o.samples;
  if (o.N) {
    if (*o.N == "auto") {
      s.N.reset();
    } else {
      try {
        std::size_t used = 0;
        s.N = std::stoi(*o.N, &used);
        if (used != o.N->size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw flatheat::ConfigError("--N expects an integer or 'auto', got '" + *o.N + "'");
      }
    }
  }
  // Re-run the JSON path so overrides are validated exactly like file values.
  return flatheat::scenario_from_json(flatheat::scenario_to_json(s));
}

std::vector<flatheat::Scenario> resolve(const Overrides& o) {
  std::vector<flatheat::Scenario> out;
  if (o.scenario_files.empty()) {
    out.push_back(apply(flatheat::Scenario{}, o));
  }
  for (const auto& f : o.scenario_files) {
    out.push_back(apply(flatheat::load_scenario(f), o));
  }
  return out;
}

// Runs `job` for every scenario concurrently; returns the worst exit code.
template <class Job>
int run_batch(const std::vector<flatheat::Scenario>& scenarios, Job job) {
  std::vector<std::future<std::string>> futures;
  for (const auto& s : scenarios) {
    futures.push_back(std::async(std::launch::async, [&job, s] { return job(s); }));
  }
  int code = flatheat::kExitOk;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    try {
      std::cout << futures[i].get();
    } catch (const flatheat::ConfigError& e) {
      std::cerr << scenarios[i].label() << ": config error: " << e.what() << "\n";
      code = std::max(code, flatheat::kExitConfigError);
    } catch (const flatheat::NumericalError& e) {
      std::cerr << scenarios[i].label() << ": numerical failure: " << e.what() << "\n";
      code = std::max(code, flatheat::kExitNumericalError);
    } catch (const std::exception& e) {
      std::cerr << scenarios[i].label() << ": error: " << e.what() << "\n";
      code = std::max(code, flatheat::kExitNumericalError);
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flatness-based feedforward heat flux synthesis for a 1D rod"};
  app.set_version_flag("--version", flatheat::tool_version());
  app.require_subcommand(1);

  Overrides diag_o, sig_o, sim_o;
  std::string kind = "eta";
  std::vector<std::string> material_files;

  auto* materials = app.add_subcommand("materials", "List known materials");
  materials->add_option("--scenario", material_files, "Scenario files contributing materials")
      ->check(CLI::ExistingFile);

  auto* diagnose = app.add_subcommand("diagnose", "Write eta / mu / r_hat diagnostics");
  add_scenario_flags(diagnose, diag_o);
  diagnose->add_option("--kind", kind, "eta, mu or rhat");

  auto* signal = app.add_subcommand("signal", "Synthesize the truncated input signal");
  add_scenario_flags(signal, sig_o);

  auto* simulate = app.add_subcommand("simulate", "Synthesize and verify by PDE simulation");
  add_scenario_flags(simulate, sim_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : flatheat::kExitConfigError;
  }

  try {
    if (*materials) {
      auto reg = flatheat::MaterialRegistry::builtin();
      for (const auto& f : material_files) {
        for (const auto& m : flatheat::load_scenario(f).materials) reg.add(m);
      }
      std::cout << flatheat::cmd_materials(reg);
      return flatheat::kExitOk;
    }

    if (*diagnose) {
      const auto k = flatheat::parse_diagnostic_kind(kind);
      return run_batch(resolve(diag_o), [k](const flatheat::Scenario& s) {
        const auto r = flatheat::cmd_diagnose(s, k, s.out_dir);
        nlohmann::json j = {{"scenario", s.label()},
                            {"csv", r.csv.string()},
                            {"gamma", r.gamma},
                            {"max_index", r.max_index},
                            {"eta_max", r.diagnostics.eta.at(static_cast<std::size_t>(r.max_index))},
                            {"first_subunity_index", r.first_subunity_index}};
        return j.dump() + "\n";
      });
    }

    if (*signal) {
      return run_batch(resolve(sig_o), [](const flatheat::Scenario& s) {
        const auto r = flatheat::cmd_signal(s, s.out_dir);
        auto j = flatheat::to_json(r.summary);
        j["scenario"] = s.label();
        if (r.summary.truncation_fallback) {
          std::cerr << s.label() << ": warning: truncation rule not satisfied, using N = "
                    << r.summary.N << "\n";
        }
        return j.dump() + "\n";
      });
    }

    if (*simulate) {
      return run_batch(resolve(sim_o), [](const flatheat::Scenario& s) {
        const auto r = flatheat::cmd_simulate(s, s.out_dir);
        auto j = flatheat::to_json(r.summary);
        j["scenario"] = s.label();
        if (r.summary.below_absolute_zero) {
          std::cerr << s.label() << ": warning: field drops below 0 K (min "
                    << r.summary.min_temperature << " K)\n";
        }
        return j.dump() + "\n";
      });
    }
  } catch (const flatheat::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return flatheat::kExitConfigError;
  } catch (const flatheat::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return flatheat::kExitNumericalError;
  }
  return flatheat::kExitOk;
}
