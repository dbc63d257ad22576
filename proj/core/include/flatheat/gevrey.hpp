#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace flatheat {

/// Smooth set-point transition y(t) = y0 + delta_y * Phi(t) on [0, T].
///
/// `omega` is the steepness exponent of the bump function; omega > 1 keeps the
/// Gevrey order 1 + 1/omega below 2, which the coefficient series needs in
/// order to converge.
struct TransitionSpec {
  double omega = 2.0;
  double T = 1000.0;      // s
  double y0 = 300.0;      // K
  double delta_y = 100.0; // K

  friend bool operator==(const TransitionSpec&, const TransitionSpec&) = default;
};

/// Throws ConfigError unless omega > 1, T > 0 and all fields are finite.
void validate(const TransitionSpec& spec);

/// Default integration tolerance for the normalizing integral.
inline constexpr double kDefaultQuadratureTol = 1e-10;

/// Exponent below which exp() underflows double; samples whose inner exponent
/// falls under it are treated as exactly flat.
inline constexpr double kUnderflowExponent = -700.0;

/// Omega(t) = exp(-1 / ((1 - t/T) t/T)^omega) on (0, T), zero elsewhere.
double bump_value(const TransitionSpec& spec, double t);

/// [g, g', ..., g^(order)] at normalized time tau in (0, 1), where
/// g(tau) = -(tau (1 - tau))^(-omega) and derivatives are taken in tau.
///
/// Uses Faa di Bruno with the quadratic inner function, so only the
/// two-argument partial Bell polynomials appear. Throws std::domain_error for
/// tau outside (0, 1).
std::vector<double> inner_exponent_derivatives(const TransitionSpec& spec, double tau,
                                               int order);

/// B_{n,k}(x1, x2, 0, 0, ...) in closed form:
/// n! / ((2k-n)! (n-k)!) * x1^(2k-n) * (x2/2)^(n-k) for n/2 <= k <= n, else 0.
double partial_bell_two_term(int n, int k, double x1, double x2);

/// Derivatives d^i/dt^i Omega(t), i = 0..max_order, at a single physical time.
/// All orders are exactly zero outside (0, T) and wherever the inner exponent
/// is below kUnderflowExponent.
std::vector<double> bump_derivatives_at(const TransitionSpec& spec, double t, int max_order);

/// Normalizing integral of the bump over [0, T]. rel_tol must lie in
/// (0, 1e-3]; throws NumericalError if the panel budget is exhausted.
double bump_integral(const TransitionSpec& spec, double rel_tol = kDefaultQuadratureTol);

/// Sampled bump derivatives on a time grid, plus the normalizing integral.
/// Immutable after construction by bump_derivatives().
class DerivativeTable {
 public:
  DerivativeTable(TransitionSpec spec, std::vector<double> times, int max_order,
                  std::vector<double> values, double omega_hat);

  const TransitionSpec& spec() const { return spec_; }
  std::span<const double> times() const { return times_; }
  int max_order() const { return max_order_; }
  double omega_hat() const { return omega_hat_; }
  std::size_t samples() const { return times_.size(); }

  /// d^order/dt^order Omega at times()[k].
  double value(int order, std::size_t k) const {
    return values_[static_cast<std::size_t>(order) * times_.size() + k];
  }
  /// Row of a single derivative order across all samples.
  std::span<const double> row(int order) const {
    return std::span<const double>(values_).subspan(
        static_cast<std::size_t>(order) * times_.size(), times_.size());
  }

 private:
  TransitionSpec spec_;
  std::vector<double> times_;
  int max_order_;
  std::vector<double> values_;  // row-major (order, sample)
  double omega_hat_;
};

/// `samples` equally spaced instants on [0, T] inclusive (samples >= 2).
std::vector<double> uniform_grid(double T, std::size_t samples);

inline constexpr std::size_t kDefaultSamples = 1001;

/// Builds the derivative table for orders 0..max_order. Throws
/// std::invalid_argument for unsorted times, times outside [0, T] or a negative
/// order.
DerivativeTable bump_derivatives(const TransitionSpec& spec, std::span<const double> times,
                                 int max_order, double rel_tol = kDefaultQuadratureTol);

/// Phi(t): 0 for t <= 0, 1 for t >= T, otherwise the running integral of the
/// bump divided by the table's normalizing integral.
double transition_value(const TransitionSpec& spec, const DerivativeTable& table, double t);

/// order 0: y0 + delta_y Phi(t). order i >= 1: delta_y Omega^(i-1)(t) / omega_hat
/// inside (0, T), zero outside. Throws std::out_of_range if
/// order > table.max_order() + 1.
double reference_output(const TransitionSpec& spec, const DerivativeTable& table, double t,
                        int order);

}  // namespace flatheat
