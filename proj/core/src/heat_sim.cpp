#include "flatheat/heat_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "flatheat/error.hpp"
#include "flatheat/quadrature.hpp"

namespace flatheat {

void validate(const SimulationConfig& cfg) {
  validate(cfg.material);
  validate(cfg.geometry);
  if (cfg.grid_points < 3) throw ConfigError("simulation: grid_points must be >= 3");
  if (!(std::isfinite(cfg.dt) && cfg.dt > 0.0)) {
    throw ConfigError("simulation: dt must be finite and positive");
  }
  if (!(std::isfinite(cfg.t_end) && cfg.t_end >= cfg.dt)) {
    throw ConfigError("simulation: t_end must be >= dt");
  }
  if (cfg.theta0.size() != 1 && cfg.theta0.size() != static_cast<std::size_t>(cfg.grid_points)) {
    throw ConfigError("simulation: theta0 needs 1 or grid_points entries");
  }
  for (double v : cfg.theta0) {
    if (!std::isfinite(v)) throw ConfigError("simulation: theta0 must be finite");
  }
  for (double p : cfg.probes) {
    if (!(p >= 0.0 && p <= cfg.geometry.length)) {
      throw ConfigError("simulation: probe position " + std::to_string(p) + " outside [0, L]");
    }
  }
  if (cfg.max_frames < 2) throw ConfigError("simulation: max_frames must be >= 2");
}

std::vector<double> Tridiagonal::multiply(std::span<const double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw std::invalid_argument("Tridiagonal::multiply: size mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * x[i];
    if (i > 0) v += lower[i] * x[i - 1];
    if (i + 1 < n) v += upper[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

std::vector<double> thomas_solve(const Tridiagonal& A, std::span<const double> rhs) {
  const std::size_t n = A.size();
  if (rhs.size() != n || A.lower.size() != n || A.upper.size() != n) {
    throw std::invalid_argument("thomas_solve: size mismatch");
  }
  std::vector<double> c(n), d(n);
  double denom = A.diag[0];
  c[0] = n > 1 ? A.upper[0] / denom : 0.0;
  d[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < n; ++i) {
    denom = A.diag[i] - A.lower[i] * c[i - 1];
    c[i] = i + 1 < n ? A.upper[i] / denom : 0.0;
    d[i] = (rhs[i] - A.lower[i] * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    d[i] -= c[i] * d[i + 1];
  }
  return d;
}

std::vector<double> node_positions(const SimulationConfig& cfg) {
  const auto M = static_cast<std::size_t>(cfg.grid_points);
  std::vector<double> x(M);
  for (std::size_t j = 0; j < M; ++j) {
    x[j] = cfg.geometry.length * (static_cast<double>(j) / static_cast<double>(M - 1));
  }
  x.back() = cfg.geometry.length;
  return x;
}

std::vector<double> initial_state(const SimulationConfig& cfg) {
  if (cfg.theta0.size() == 1) {
    return std::vector<double>(static_cast<std::size_t>(cfg.grid_points), cfg.theta0[0]);
  }
  return cfg.theta0;
}

Tridiagonal diffusion_operator(const SimulationConfig& cfg) {
  const auto M = static_cast<std::size_t>(cfg.grid_points);
  const double dx = cfg.geometry.length / static_cast<double>(M - 1);
  const double r = diffusivity(cfg.material) / (dx * dx);
  Tridiagonal A{std::vector<double>(M, r), std::vector<double>(M, -2.0 * r),
                std::vector<double>(M, r)};
  A.lower[0] = 0.0;
  A.upper[M - 1] = 0.0;
  // ghost nodes mirrored through the boundary
  A.upper[0] = 2.0 * r;
  A.lower[M - 1] = 2.0 * r;
  return A;
}

namespace {

// Boundary source at node 0 for flux u: 2 alpha u / (lambda dx).
double boundary_gain(const SimulationConfig& cfg) {
  const double dx = cfg.geometry.length / static_cast<double>(cfg.grid_points - 1);
  return 2.0 * diffusivity(cfg.material) / (cfg.material.lambda * dx);
}

struct ProbeStencil {
  std::size_t left;
  double weight;  // of the right neighbour

  double read(std::span<const double> state) const {
    if (weight == 0.0) return state[left];
    return (1.0 - weight) * state[left] + weight * state[left + 1];
  }
};

ProbeStencil make_stencil(double pos, const SimulationConfig& cfg) {
  const auto M = static_cast<std::size_t>(cfg.grid_points);
  const double dx = cfg.geometry.length / static_cast<double>(M - 1);
  const double s = pos / dx;
  auto left = static_cast<std::size_t>(std::floor(s));
  if (left >= M - 1) return {M - 1, 0.0};
  double w = s - static_cast<double>(left);
  // snap to a node when the position is within round-off of it
  if (std::abs(w) < 1e-12) w = 0.0;
  if (std::abs(1.0 - w) < 1e-12) return {left + 1, 0.0};
  return {left, w};
}

SimulationResult run(const SimulationConfig& cfg, const FluxSampler& u_at,
                     const FluxIntegral* applied) {
  validate(cfg);
  const auto M = static_cast<std::size_t>(cfg.grid_points);
  const auto steps = static_cast<std::size_t>(std::ceil(cfg.t_end / cfg.dt - 1e-9));
  const double dt = cfg.t_end / static_cast<double>(steps);
  const std::size_t stride = (steps + cfg.max_frames - 2) / (cfg.max_frames - 1);

  const Tridiagonal A = diffusion_operator(cfg);
  Tridiagonal lhs = A;
  Tridiagonal rhs_op = A;
  for (std::size_t j = 0; j < M; ++j) {
    lhs.lower[j] *= -0.5 * dt;
    lhs.diag[j] = 1.0 - 0.5 * dt * A.diag[j];
    lhs.upper[j] *= -0.5 * dt;
    rhs_op.lower[j] *= 0.5 * dt;
    rhs_op.diag[j] = 1.0 + 0.5 * dt * A.diag[j];
    rhs_op.upper[j] *= 0.5 * dt;
  }
  const double gain = boundary_gain(cfg);

  SimulationResult res;
  res.x = node_positions(cfg);
  res.probes = cfg.probes;
  res.probe_traces.assign(cfg.probes.size(), {});
  res.steps = steps;
  res.dt = dt;
  std::vector<ProbeStencil> stencils;
  for (double p : cfg.probes) stencils.push_back(make_stencil(p, cfg));

  auto state = initial_state(cfg);
  res.min_temperature = *std::min_element(state.begin(), state.end());
  res.max_temperature = *std::max_element(state.begin(), state.end());

  auto record = [&](double t) {
    res.times.push_back(t);
    res.field.insert(res.field.end(), state.begin(), state.end());
    for (std::size_t p = 0; p < stencils.size(); ++p) {
      res.probe_traces[p].push_back(stencils[p].read(state));
    }
    res.output_trace.push_back(state.back());
  };
  record(0.0);

  // Simpson accumulation of the applied flux for the sampler-only overload.
  std::vector<double> simpson_applied{0.0};
  CompensatedSum applied_sum;
  double u_prev = applied ? 0.0 : u_at(0.0);

  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = dt * static_cast<double>(k);
    const double t1 = (k + 1 == steps) ? cfg.t_end : dt * static_cast<double>(k + 1);
    const double u_mid = u_at(0.5 * (t0 + t1));
    auto rhs = rhs_op.multiply(state);
    rhs[0] += (t1 - t0) * gain * u_mid;
    state = thomas_solve(lhs, rhs);

    for (double v : state) {
      if (!std::isfinite(v)) {
        throw NumericalError("simulate: non-finite state at step " + std::to_string(k + 1) +
                             " (t = " + std::to_string(t1) + " s)");
      }
    }
    const auto [lo, hi] = std::minmax_element(state.begin(), state.end());
    res.min_temperature = std::min(res.min_temperature, *lo);
    res.max_temperature = std::max(res.max_temperature, *hi);

    if (!applied) {
      const double u_next = u_at(t1);
      applied_sum.add((t1 - t0) / 6.0 * (u_prev + 4.0 * u_mid + u_next));
      u_prev = u_next;
    }
    if ((k + 1) % stride == 0 || k + 1 == steps) {
      record(t1);
      if (!applied) simpson_applied.push_back(applied_sum.value());
    }
  }

  if (applied) {
    res.energy_residual = energy_audit(res, cfg, *applied);
  } else {
    const auto& times = res.times;
    res.energy_residual = energy_audit(res, cfg, [&](double t) {
      const auto it = std::lower_bound(times.begin(), times.end(), t);
      return simpson_applied[static_cast<std::size_t>(it - times.begin())];
    });
  }
  return res;
}

}  // namespace

std::vector<double> semidiscretize(const SimulationConfig& cfg, const FluxSampler& u_at, double t,
                                   std::span<const double> state) {
  if (state.size() != static_cast<std::size_t>(cfg.grid_points)) {
    throw std::invalid_argument("semidiscretize: state has " + std::to_string(state.size()) +
                                " entries, expected " + std::to_string(cfg.grid_points));
  }
  auto rate = diffusion_operator(cfg).multiply(state);
  rate[0] += boundary_gain(cfg) * u_at(t);
  return rate;
}

InputSampler::InputSampler(const InputSignal& signal)
    : InputSampler(signal.times, signal.values) {}

InputSampler::InputSampler(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) {
    throw std::invalid_argument("InputSampler: size mismatch");
  }
  if (!std::is_sorted(times_.begin(), times_.end())) {
    throw std::invalid_argument("InputSampler: times must be sorted");
  }
  cumulative_.assign(times_.size(), 0.0);
  CompensatedSum s;
  for (std::size_t i = 1; i < times_.size(); ++i) {
    s.add(0.5 * (times_[i] - times_[i - 1]) * (values_[i] + values_[i - 1]));
    cumulative_[i] = s.value();
  }
}

double InputSampler::operator()(double t) const {
  if (times_.empty() || t < times_.front() || t > times_.back()) return 0.0;
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.end()) return values_.back();
  const auto i = static_cast<std::size_t>(it - times_.begin());
  const double t0 = times_[i - 1], t1 = times_[i];
  if (t1 == t0) return values_[i];
  const double w = (t - t0) / (t1 - t0);
  return (1.0 - w) * values_[i - 1] + w * values_[i];
}

double InputSampler::integral(double t) const {
  if (times_.empty() || t <= times_.front()) return 0.0;
  if (t >= times_.back()) return cumulative_.back();
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto i = static_cast<std::size_t>(it - times_.begin());
  const double t0 = times_[i - 1];
  return cumulative_[i - 1] + 0.5 * (t - t0) * (values_[i - 1] + (*this)(t));
}

SimulationResult simulate(const SimulationConfig& cfg, const FluxSampler& u_at) {
  return run(cfg, u_at, nullptr);
}

SimulationResult simulate(const SimulationConfig& cfg, const InputSignal& signal) {
  const InputSampler sampler(signal);
  const FluxIntegral applied = [&](double t) { return sampler.integral(t); };
  return run(cfg, [&](double t) { return sampler(t); }, &applied);
}

double energy_audit(const SimulationResult& result, const SimulationConfig& cfg,
                    const FluxIntegral& applied) {
  if (result.frames() == 0) return 0.0;
  const double rho_c = cfg.material.rho * cfg.material.c;
  const double e0 = trapezoid(result.x, result.frame(0));
  double max_abs = 0.0;
  for (double v : result.field) max_abs = std::max(max_abs, std::abs(v));
  const double norm = cfg.geometry.length * (max_abs > 0.0 ? max_abs : 1.0);

  double worst = 0.0;
  for (std::size_t f = 0; f < result.frames(); ++f) {
    const double e = trapezoid(result.x, result.frame(f));
    const double defect = e - e0 - applied(result.times[f]) / rho_c;
    worst = std::max(worst, std::abs(defect) / norm);
  }
  return worst;
}

double energy_audit(const SimulationResult& result, const SimulationConfig& cfg,
                    const InputSignal& signal) {
  const InputSampler sampler(signal);
  return energy_audit(result, cfg, [&](double t) { return sampler.integral(t); });
}

}  // namespace flatheat
