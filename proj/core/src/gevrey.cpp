#include "flatheat/gevrey.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flatheat/error.hpp"
#include "flatheat/quadrature.hpp"

namespace flatheat {

namespace {

// Derivative recurrences run in extended precision: the intermediate
// products p^(-omega-k) * (omega)_k grow past double range for omega near 1
// and orders beyond ~40, while the final values are representable.
using wide = long double;

wide factorial(int n) {
  wide r = 1.0L;
  for (int i = 2; i <= n; ++i) r *= static_cast<wide>(i);
  return r;
}

wide bell_two_term(int n, int k, wide x1, wide x2) {
  if (n == 0 && k == 0) return 1.0L;
  if (k <= 0 || k > n || 2 * k < n) return 0.0L;
  const int e1 = 2 * k - n;
  const int e2 = n - k;
  const wide coeff = factorial(n) / (factorial(e1) * factorial(e2));
  return coeff * std::pow(x1, static_cast<wide>(e1)) * std::pow(x2 / 2.0L, static_cast<wide>(e2));
}

// g^(n)(tau) for n = 0..order, g = -(tau (1 - tau))^(-omega).
std::vector<wide> inner_derivatives_wide(wide omega, wide tau, int order) {
  const wide p = tau * (1.0L - tau);
  const wide dp = 1.0L - 2.0L * tau;
  constexpr wide d2p = -2.0L;

  // outer[k] = f^(k)(p) with f(x) = -x^(-omega):
  // f^(k)(x) = -(-1)^k omega (omega+1) ... (omega+k-1) x^(-omega-k)
  std::vector<wide> outer(static_cast<std::size_t>(order) + 1);
  wide rising = 1.0L;
  const wide base = std::pow(p, -omega);
  wide inv_pow = 1.0L;
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      rising *= omega + static_cast<wide>(k - 1);
      inv_pow /= p;
    }
    const wide sign = (k % 2 == 0) ? -1.0L : 1.0L;
    outer[static_cast<std::size_t>(k)] = sign * rising * base * inv_pow;
  }

  std::vector<wide> g(static_cast<std::size_t>(order) + 1, 0.0L);
  g[0] = outer[0];
  for (int n = 1; n <= order; ++n) {
    wide acc = 0.0L;
    for (int k = (n + 1) / 2; k <= n; ++k) {
      acc += outer[static_cast<std::size_t>(k)] * bell_two_term(n, k, dp, d2p);
    }
    g[static_cast<std::size_t>(n)] = acc;
  }
  return g;
}

void check_order(int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
}

// Fills out[0..max_order] with d^i/dt^i Omega at physical time t.
void bump_derivatives_into(const TransitionSpec& spec, double t, int max_order,
                           const std::vector<std::vector<wide>>& pascal, double* out) {
  std::fill(out, out + max_order + 1, 0.0);
  if (!(t > 0.0 && t < spec.T)) return;
  const wide tau = static_cast<wide>(t) / static_cast<wide>(spec.T);
  if (!(tau > 0.0L && tau < 1.0L)) return;

  const wide p = tau * (1.0L - tau);
  const wide g0 = -std::pow(p, -static_cast<wide>(spec.omega));
  if (g0 < static_cast<wide>(kUnderflowExponent)) return;

  const auto g = inner_derivatives_wide(static_cast<wide>(spec.omega), tau, max_order);

  // Omega' = Omega g'  =>  Omega^(n) = sum_{j<n} C(n-1, j) Omega^(j) g^(n-j)
  std::vector<wide> d(static_cast<std::size_t>(max_order) + 1, 0.0L);
  d[0] = std::exp(g0);
  for (int n = 1; n <= max_order; ++n) {
    const auto& row = pascal[static_cast<std::size_t>(n - 1)];
    wide acc = 0.0L;
    for (int j = 0; j < n; ++j) {
      acc += row[static_cast<std::size_t>(j)] * d[static_cast<std::size_t>(j)] *
             g[static_cast<std::size_t>(n - j)];
    }
    d[static_cast<std::size_t>(n)] = acc;
  }

  // chain rule from tau to t
  const wide inv_T = 1.0L / static_cast<wide>(spec.T);
  wide scale = 1.0L;
  for (int n = 0; n <= max_order; ++n) {
    out[n] = static_cast<double>(d[static_cast<std::size_t>(n)] * scale);
    scale *= inv_T;
  }
}

// Rows 0..max_n of Pascal's triangle, built additively.
std::vector<std::vector<wide>> pascal_rows(int max_n) {
  std::vector<std::vector<wide>> rows;
  rows.reserve(static_cast<std::size_t>(std::max(max_n, 0)) + 1);
  rows.push_back({1.0L});
  for (int n = 1; n <= max_n; ++n) {
    const auto& prev = rows.back();
    std::vector<wide> row(static_cast<std::size_t>(n) + 1, 1.0L);
    for (int j = 1; j < n; ++j) {
      row[static_cast<std::size_t>(j)] =
          prev[static_cast<std::size_t>(j - 1)] + prev[static_cast<std::size_t>(j)];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

void validate(const TransitionSpec& spec) {
  if (!std::isfinite(spec.omega) || !(spec.omega > 1.0)) {
    throw ConfigError("transition: omega must be > 1");
  }
  if (!std::isfinite(spec.T) || !(spec.T > 0.0)) {
    throw ConfigError("transition: T must be finite and positive");
  }
  if (!std::isfinite(spec.y0) || !std::isfinite(spec.delta_y)) {
    throw ConfigError("transition: y0 and delta_y must be finite");
  }
}

double bump_value(const TransitionSpec& spec, double t) {
  if (!(t > 0.0 && t < spec.T)) return 0.0;
  const double tau = t / spec.T;
  const double p = (1.0 - tau) * tau;
  if (!(p > 0.0)) return 0.0;
  return std::exp(-1.0 / std::pow(p, spec.omega));
}

double partial_bell_two_term(int n, int k, double x1, double x2) {
  return static_cast<double>(bell_two_term(n, k, x1, x2));
}

std::vector<double> inner_exponent_derivatives(const TransitionSpec& spec, double tau,
                                               int order) {
  check_order(order);
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::domain_error("inner exponent derivatives need tau in (0, 1), got " +
                            std::to_string(tau));
  }
  const auto g = inner_derivatives_wide(static_cast<wide>(spec.omega), tau, order);
  return {g.begin(), g.end()};
}

std::vector<double> bump_derivatives_at(const TransitionSpec& spec, double t, int max_order) {
  check_order(max_order);
  const auto pascal = pascal_rows(max_order);
  std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
  bump_derivatives_into(spec, t, max_order, pascal, out.data());
  return out;
}

double bump_integral(const TransitionSpec& spec, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) {
    throw std::invalid_argument("bump_integral: rel_tol must lie in (0, 1e-3]");
  }
  const auto result =
      adaptive_simpson([&](double t) { return bump_value(spec, t); }, 0.0, spec.T, rel_tol);
  if (!(result.value > 0.0)) {
    throw NumericalError("bump integral underflows double precision (omega too large)");
  }
  return result.value;
}

DerivativeTable::DerivativeTable(TransitionSpec spec, std::vector<double> times, int max_order,
                                 std::vector<double> values, double omega_hat)
    : spec_(spec),
      times_(std::move(times)),
      max_order_(max_order),
      values_(std::move(values)),
      omega_hat_(omega_hat) {
  if (values_.size() != (static_cast<std::size_t>(max_order_) + 1) * times_.size()) {
    throw std::invalid_argument("DerivativeTable: value matrix has wrong size");
  }
}

std::vector<double> uniform_grid(double T, std::size_t samples) {
  if (samples < 2) throw std::invalid_argument("uniform_grid: need at least two samples");
  std::vector<double> t(samples);
  const double n = static_cast<double>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) {
    t[k] = T * (static_cast<double>(k) / n);
  }
  t.back() = T;
  return t;
}

DerivativeTable bump_derivatives(const TransitionSpec& spec, std::span<const double> times,
                                 int max_order, double rel_tol) {
  validate(spec);
  check_order(max_order);
  if (!std::is_sorted(times.begin(), times.end())) {
    throw std::invalid_argument("bump_derivatives: times must be sorted");
  }
  if (!times.empty() && (times.front() < 0.0 || times.back() > spec.T)) {
    throw std::invalid_argument("bump_derivatives: times must lie within [0, T]");
  }

  const std::size_t n = times.size();
  const auto orders = static_cast<std::size_t>(max_order) + 1;
  const auto pascal = pascal_rows(max_order);
  std::vector<double> values(orders * n);
  std::vector<double> column(orders);
  for (std::size_t k = 0; k < n; ++k) {
    bump_derivatives_into(spec, times[k], max_order, pascal, column.data());
    for (std::size_t i = 0; i < orders; ++i) values[i * n + k] = column[i];
  }
  return DerivativeTable(spec, {times.begin(), times.end()}, max_order, std::move(values),
                         bump_integral(spec, rel_tol));
}

double transition_value(const TransitionSpec& spec, const DerivativeTable& table, double t) {
  if (t <= 0.0) return 0.0;
  if (t >= spec.T) return 1.0;
  const double omega_hat = table.omega_hat();
  auto f = [&](double s) { return bump_value(spec, s); };
  // Integrate over the shorter side for accuracy near the end of the ramp.
  double phi;
  if (t <= 0.5 * spec.T) {
    phi = adaptive_simpson(f, 0.0, t, 1e-12, 1e-15 * omega_hat).value / omega_hat;
  } else {
    phi = 1.0 - adaptive_simpson(f, t, spec.T, 1e-12, 1e-15 * omega_hat).value / omega_hat;
  }
  return std::clamp(phi, 0.0, 1.0);
}

double reference_output(const TransitionSpec& spec, const DerivativeTable& table, double t,
                        int order) {
  check_order(order);
  if (order > table.max_order() + 1) {
    throw std::out_of_range("reference_output: order " + std::to_string(order) +
                            " exceeds table order " + std::to_string(table.max_order()) + " + 1");
  }
  if (spec.omega != table.spec().omega || spec.T != table.spec().T) {
    throw std::invalid_argument("reference_output: table was built for a different transition");
  }
  if (order == 0) return spec.y0 + spec.delta_y * transition_value(spec, table, t);
  if (!(t > 0.0 && t < spec.T)) return 0.0;
  const auto d = bump_derivatives_at(spec, t, order - 1);
  return spec.delta_y * d.back() / table.omega_hat();
}

}  // namespace flatheat
