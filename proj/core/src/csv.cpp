#include "flatheat/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "flatheat/error.hpp"

namespace flatheat {

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::scientific, 16);
  if (ec != std::errc()) return "nan";
  return {buf.data(), ptr};
}

std::string format_short(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return {buf.data(), ptr};
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory " + path.parent_path().string());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ConfigError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ConfigError("cannot rename onto " + path.string());
  }
}

std::string derivative_table_csv(const DerivativeTable& table) {
  std::string out = "t";
  for (int i = 0; i <= table.max_order(); ++i) out += ",d" + std::to_string(i);
  out += '\n';
  const auto t = table.times();
  for (std::size_t k = 0; k < t.size(); ++k) {
    out += format_double(t[k]);
    for (int i = 0; i <= table.max_order(); ++i) {
      out += ',';
      out += format_double(table.value(i, k));
    }
    out += '\n';
  }
  return out;
}

std::string diagnostics_csv(const EtaDiagnostics& diag) {
  std::string out = "i,eta,log10_eta,beta,mu,r_hat\n";
  for (std::size_t i = 0; i < diag.terms(); ++i) {
    out += std::to_string(i);
    out += ',' + format_double(diag.eta[i]);
    out += ',' + format_double(diag.eta_log10[i]);
    out += ',' + format_double(diag.beta[i]);
    out += ',';
    if (i < diag.mu.size()) out += format_double(diag.mu[i]);
    out += ',';
    if (i < diag.r_hat.size()) out += format_double(diag.r_hat[i]);
    out += '\n';
  }
  return out;
}

std::string signal_csv(const InputSignal& signal) {
  std::string out = "t,u\n";
  for (std::size_t k = 0; k < signal.times.size(); ++k) {
    out += format_double(signal.times[k]) + ',' + format_double(signal.values[k]) + '\n';
  }
  return out;
}

std::string probes_csv(const SimulationResult& result) {
  std::string out = "t,y";
  for (double p : result.probes) out += ",probe_" + format_short(p);
  out += '\n';
  for (std::size_t f = 0; f < result.frames(); ++f) {
    out += format_double(result.times[f]) + ',' + format_double(result.output_trace[f]);
    for (const auto& trace : result.probe_traces) out += ',' + format_double(trace[f]);
    out += '\n';
  }
  return out;
}

std::string field_csv(const SimulationResult& result) {
  std::string out;
  for (std::size_t j = 0; j < result.nodes(); ++j) {
    if (j) out += ',';
    out += format_double(result.x[j]);
  }
  out += '\n';
  for (std::size_t f = 0; f < result.frames(); ++f) {
    const auto row = result.frame(f);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_double(row[j]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace flatheat
