#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "flatheat/flat_series.hpp"
#include "flatheat/materials.hpp"

namespace flatheat {

// Method-of-lines model of the rod: flux actuation at x = 0, insulated x = L,
// second-order finite differences on a uniform node grid.

struct SimulationConfig {
  MaterialProperties material;
  RodGeometry geometry;
  int grid_points = 101;
  double dt = 0.1;      // s; shrunk slightly if t_end is not a multiple
  double t_end = 1000.0;
  // One entry means a uniform initial temperature, otherwise one per node.
  std::vector<double> theta0{300.0};
  std::vector<double> probes;  // m, within [0, L]
  std::size_t max_frames = 2001;
};

void validate(const SimulationConfig& cfg);

/// Tridiagonal matrix stored by diagonals; lower[0] and upper[n-1] are unused.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;

  std::size_t size() const { return diag.size(); }
  std::vector<double> multiply(std::span<const double> x) const;
};

/// Solves A x = rhs by the Thomas algorithm (no pivoting; A must be
/// diagonally dominant or otherwise safe to eliminate in order).
std::vector<double> thomas_solve(const Tridiagonal& A, std::span<const double> rhs);

/// Diffusion operator with both boundary rows closed by ghost-node
/// reflection: d(theta)/dt = A theta + b(t).
Tridiagonal diffusion_operator(const SimulationConfig& cfg);

/// Node coordinates x_j = j L / (M - 1).
std::vector<double> node_positions(const SimulationConfig& cfg);

/// Initial node temperatures expanded from cfg.theta0.
std::vector<double> initial_state(const SimulationConfig& cfg);

using FluxSampler = std::function<double(double)>;

/// Right-hand side of the semi-discrete system at time t.
std::vector<double> semidiscretize(const SimulationConfig& cfg, const FluxSampler& u_at, double t,
                                   std::span<const double> state);

/// Piecewise-linear view of a sampled signal, zero outside its sample span.
class InputSampler {
 public:
  explicit InputSampler(const InputSignal& signal);
  InputSampler(std::vector<double> times, std::vector<double> values);

  double operator()(double t) const;
  /// Exact integral of the interpolant over [times.front(), t].
  double integral(double t) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

struct SimulationResult {
  std::vector<double> times;  // recorded frames
  std::vector<double> x;      // node coordinates
  std::vector<double> field;  // row-major (frame, node)
  std::vector<double> probes;
  std::vector<std::vector<double>> probe_traces;  // [probe][frame]
  std::vector<double> output_trace;               // theta(t, L) per frame
  double energy_residual = 0.0;
  double min_temperature = 0.0;
  double max_temperature = 0.0;
  std::size_t steps = 0;
  double dt = 0.0;

  std::size_t frames() const { return times.size(); }
  std::size_t nodes() const { return x.size(); }
  std::span<const double> frame(std::size_t f) const {
    return std::span<const double>(field).subspan(f * x.size(), x.size());
  }
};

/// Crank-Nicolson integration of the semi-discrete system with the boundary
/// flux taken at the step midpoint. Throws NumericalError on a non-finite
/// state. The sampler overload audits energy against a per-step Simpson
/// integral of u; the signal overload uses the exact interpolant integral.
SimulationResult simulate(const SimulationConfig& cfg, const FluxSampler& u_at);
SimulationResult simulate(const SimulationConfig& cfg, const InputSignal& signal);

/// Cumulative applied flux, int_0^t u(s) ds.
using FluxIntegral = std::function<double(double)>;

/// max over frames of |E(t) - E(0) - int_0^t u / (rho c)|, E = trapezoid
/// integral of theta over the rod, normalized by L max|theta|.
double energy_audit(const SimulationResult& result, const SimulationConfig& cfg,
                    const FluxIntegral& applied);
double energy_audit(const SimulationResult& result, const SimulationConfig& cfg,
                    const InputSignal& signal);

}  // namespace flatheat
