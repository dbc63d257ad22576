#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "flatheat/flat_series.hpp"
#include "flatheat/gevrey.hpp"
#include "flatheat/heat_sim.hpp"

namespace flatheat {

/// Scientific notation with 17 significant digits, '.' separator, independent
/// of the global locale. Round-trips every finite double.
std::string format_double(double v);

/// Shortest round-trip representation (used for column labels like
/// "probe_0.05").
std::string format_short(double v);

/// Writes `content` to a sibling temp file and renames it over `path`.
/// Throws ConfigError when the destination cannot be written.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// `t,d0,d1,...,dN`
std::string derivative_table_csv(const DerivativeTable& table);

/// `i,eta,log10_eta,beta,mu,r_hat`; mu and r_hat columns are empty strings
/// when not populated.
std::string diagnostics_csv(const EtaDiagnostics& diag);

/// `t,u`
std::string signal_csv(const InputSignal& signal);

/// `t,y,probe_<x>...`
std::string probes_csv(const SimulationResult& result);

/// Header `x_0,...,x_{M-1}` holding node coordinates, then one row of
/// temperatures per recorded frame.
std::string field_csv(const SimulationResult& result);

}  // namespace flatheat
