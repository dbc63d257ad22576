#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flatheat/gevrey.hpp"
#include "flatheat/materials.hpp"

namespace flatheat {

/// Coefficient sequence of the flatness series and its convergence diagnostics.
///
/// eta[i] = L^(2i+1) / (alpha^(i+1) (2i+1)!) scales the (i+1)-th output
/// derivative in the boundary flux. It is built through the ratio
/// eta[i+1] = eta[i] * beta[i] with beta[i] = gamma / ((2i+2)(2i+3)), which
/// stays in double range where the closed form would not. eta_log10 is an
/// independent log-gamma evaluation that keeps working past double range.
///
/// mu and r_hat stay empty until mu_sequence() / r_hat_sequence() fill them.
struct EtaDiagnostics {
  double gamma = 0.0;
  double length = 0.0;
  std::vector<double> eta;
  std::vector<double> eta_log10;
  std::vector<double> beta;
  int max_index = 0;
  std::vector<double> mu;
  std::vector<double> r_hat;

  std::size_t terms() const { return eta.size(); }
};

/// Coefficients for indices 0..max_index (inclusive).
EtaDiagnostics eta_sequence(const MaterialProperties& m, const RodGeometry& g, int max_index);

/// Argmax of eta, computed from gamma alone: the smallest i with beta_i <= 1.
/// Independent of how many terms `diag` holds.
int eta_max_index(const EtaDiagnostics& diag);
int eta_max_index(double gamma);

/// First index whose log10 eta is negative, or -1 if none among the computed
/// terms.
int first_subunity_index(const EtaDiagnostics& diag);

/// mu[i] = lambda |delta_y| eta[i] ||Omega^(i)||_L2 / omega_hat, with the L2
/// norm integrated over the table's time grid. Throws std::invalid_argument
/// if the table holds fewer orders than diag has terms.
EtaDiagnostics mu_sequence(EtaDiagnostics diag, const DerivativeTable& table,
                           const MaterialProperties& m, double delta_y);

/// r_hat[i] = mu[i] / max_{j<=i} mu[j]; zero when the running maximum is zero.
EtaDiagnostics r_hat_sequence(EtaDiagnostics diag);

struct TruncationChoice {
  int N = 0;
  // true when no index satisfied the rule and N fell back to terms().
  bool fallback = false;
};

inline constexpr double kDefaultTruncationEpsilon = 1e-3;
inline constexpr int kDefaultTruncationWindow = 3;

/// Smallest N with r_hat[i] < epsilon for every i in (N, N + window].
TruncationChoice select_truncation(const EtaDiagnostics& diag,
                                   double epsilon = kDefaultTruncationEpsilon,
                                   int window = kDefaultTruncationWindow);

/// Sampled boundary heat flux u_N(t_k), W/m^2.
struct InputSignal {
  std::vector<double> times;
  std::vector<double> values;
  int truncation = 0;
  MaterialProperties material;
  TransitionSpec spec;
};

/// u_N(t_k) = (lambda delta_y / omega_hat) sum_{i=0..N} eta_i Omega^(i)(t_k),
/// accumulated with compensated summation. Throws std::out_of_range when N
/// exceeds the available table orders or eta terms.
InputSignal input_signal(const EtaDiagnostics& diag, const DerivativeTable& table,
                         const MaterialProperties& m, const TransitionSpec& spec, int N);

/// L2 norm over [0, T] of each derivative row of the table.
std::vector<double> derivative_l2_norms(const DerivativeTable& table);

}  // namespace flatheat
