#include "flatheat/flat_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "flatheat/error.hpp"
#include "flatheat/quadrature.hpp"

namespace flatheat {

EtaDiagnostics eta_sequence(const MaterialProperties& m, const RodGeometry& g, int max_index) {
  validate(m);
  validate(g);
  if (max_index < 0) throw std::invalid_argument("eta_sequence: max_index must be >= 0");

  const double alpha = diffusivity(m);
  const double L = g.length;
  const auto n = static_cast<std::size_t>(max_index) + 1;

  EtaDiagnostics d;
  d.gamma = gamma_coefficient(m, g);
  d.length = L;
  d.eta.resize(n);
  d.eta_log10.resize(n);
  d.beta.resize(n);

  const double log10_L = std::log10(L);
  const double log10_alpha = std::log10(alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const double di = static_cast<double>(i);
    d.beta[i] = d.gamma / ((2.0 * di + 2.0) * (2.0 * di + 3.0));
    d.eta[i] = (i == 0) ? L / alpha : d.eta[i - 1] * d.beta[i - 1];
    // log10((2i+1)!) = lgamma(2i+2) / ln 10
    d.eta_log10[i] = (2.0 * di + 1.0) * log10_L - (di + 1.0) * log10_alpha -
                     std::lgamma(2.0 * di + 2.0) / std::numbers::ln10;
  }
  d.max_index = eta_max_index(d.gamma);
  return d;
}

int eta_max_index(double gamma) {
  // beta_i is strictly decreasing in i, so the first i with beta_i <= 1 is the
  // peak; a tie beta_i == 1 keeps the smaller index.
  int i = 0;
  while (gamma / ((2.0 * i + 2.0) * (2.0 * i + 3.0)) > 1.0) ++i;
  return i;
}

int eta_max_index(const EtaDiagnostics& diag) { return eta_max_index(diag.gamma); }

int first_subunity_index(const EtaDiagnostics& diag) {
  for (std::size_t i = 0; i < diag.eta_log10.size(); ++i) {
    if (diag.eta_log10[i] < 0.0) return static_cast<int>(i);
  }
  return -1;
}

std::vector<double> derivative_l2_norms(const DerivativeTable& table) {
  const auto t = table.times();
  std::vector<double> norms(static_cast<std::size_t>(table.max_order()) + 1);
  std::vector<double> sq(t.size());
  for (int i = 0; i <= table.max_order(); ++i) {
    const auto row = table.row(i);
    std::transform(row.begin(), row.end(), sq.begin(), [](double v) { return v * v; });
    norms[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, integrate_samples(t, sq)));
  }
  return norms;
}

EtaDiagnostics mu_sequence(EtaDiagnostics diag, const DerivativeTable& table,
                           const MaterialProperties& m, double delta_y) {
  if (diag.terms() == 0) throw std::invalid_argument("mu_sequence: empty diagnostics");
  if (static_cast<std::size_t>(table.max_order()) + 1 < diag.terms()) {
    throw std::invalid_argument("mu_sequence: table holds orders 0.." +
                                std::to_string(table.max_order()) + " but diagnostics need 0.." +
                                std::to_string(diag.terms() - 1));
  }
  const auto norms = derivative_l2_norms(table);
  const double scale = m.lambda * std::abs(delta_y) / table.omega_hat();
  diag.mu.resize(diag.terms());
  for (std::size_t i = 0; i < diag.terms(); ++i) {
    diag.mu[i] = scale * diag.eta[i] * norms[i];
  }
  diag.r_hat.clear();
  return diag;
}

EtaDiagnostics r_hat_sequence(EtaDiagnostics diag) {
  if (diag.mu.size() != diag.terms()) {
    throw std::invalid_argument("r_hat_sequence: mu not populated");
  }
  diag.r_hat.resize(diag.mu.size());
  double running_max = 0.0;
  for (std::size_t i = 0; i < diag.mu.size(); ++i) {
    running_max = std::max(running_max, diag.mu[i]);
    diag.r_hat[i] = running_max > 0.0 ? diag.mu[i] / running_max : 0.0;
  }
  return diag;
}

TruncationChoice select_truncation(const EtaDiagnostics& diag, double epsilon, int window) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("select_truncation: epsilon must lie in (0, 1)");
  }
  if (window < 1) throw std::invalid_argument("select_truncation: window must be >= 1");
  const auto& r = diag.r_hat;
  const auto w = static_cast<std::size_t>(window);
  for (std::size_t N = 0; N + w < r.size(); ++N) {
    bool quiet = true;
    for (std::size_t i = N + 1; i <= N + w; ++i) {
      if (!(r[i] < epsilon)) {
        quiet = false;
        break;
      }
    }
    if (quiet) return {static_cast<int>(N), false};
  }
  return {static_cast<int>(diag.terms()), true};
}

InputSignal input_signal(const EtaDiagnostics& diag, const DerivativeTable& table,
                         const MaterialProperties& m, const TransitionSpec& spec, int N) {
  if (N < 0) throw std::out_of_range("input_signal: N must be >= 0");
  if (N > table.max_order()) {
    throw std::out_of_range("input_signal: N = " + std::to_string(N) +
                            " exceeds derivative order " + std::to_string(table.max_order()));
  }
  if (static_cast<std::size_t>(N) >= diag.terms()) {
    throw std::out_of_range("input_signal: N = " + std::to_string(N) + " exceeds eta terms " +
                            std::to_string(diag.terms()));
  }

  InputSignal s;
  s.times.assign(table.times().begin(), table.times().end());
  s.values.resize(s.times.size());
  s.truncation = N;
  s.material = m;
  s.spec = spec;

  const double scale = m.lambda * spec.delta_y / table.omega_hat();
  for (std::size_t k = 0; k < s.times.size(); ++k) {
    CompensatedSum sum;
    for (int i = 0; i <= N; ++i) {
      sum.add(diag.eta[static_cast<std::size_t>(i)] * table.value(i, k));
    }
    const double u = scale * sum.value();
    if (!std::isfinite(u)) {
      throw NumericalError("input_signal: non-finite value at t = " + std::to_string(s.times[k]));
    }
    s.values[k] = u;
  }
  return s;
}

}  // namespace flatheat
