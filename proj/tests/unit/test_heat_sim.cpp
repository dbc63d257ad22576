#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "flatheat/error.hpp"
#include "flatheat/heat_sim.hpp"

using namespace flatheat;

namespace {

SimulationConfig aluminum_rod(double t_end = 100.0, double dt = 0.1) {
  SimulationConfig cfg;
  cfg.material = MaterialRegistry::builtin().at("aluminum");
  cfg.geometry = RodGeometry{0.2};
  cfg.grid_points = 101;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.theta0 = {300.0};
  return cfg;
}

std::vector<double> cosine_profile(const SimulationConfig& cfg) {
  auto x = node_positions(cfg);
  for (double& v : x) v = 300.0 + std::cos(std::numbers::pi * v / cfg.geometry.length);
  return x;
}

const FluxSampler kNoFlux = [](double) { return 0.0; };

// Gaussian elimination with partial pivoting on the dense form.
std::vector<double> dense_solve(const Tridiagonal& A, std::vector<double> b) {
  const std::size_t n = A.size();
  std::vector<std::vector<double>> M(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    M[i][i] = A.diag[i];
    if (i > 0) M[i][i - 1] = A.lower[i];
    if (i + 1 < n) M[i][i + 1] = A.upper[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(M[r][c]) > std::abs(M[p][c])) p = r;
    }
    std::swap(M[c], M[p]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < n; ++k) M[r][k] -= f * M[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= M[i][k] * x[k];
    x[i] = s / M[i][i];
  }
  return x;
}

}  // namespace

TEST(Thomas, MatchesDenseElimination) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (std::size_t n : {2u, 3u, 10u, 57u}) {
    Tridiagonal A{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      A.lower[i] = i > 0 ? U(rng) : 0.0;
      A.upper[i] = i + 1 < n ? U(rng) : 0.0;
      A.diag[i] = 2.5 + std::abs(U(rng));
      b[i] = U(rng);
    }
    const auto x = thomas_solve(A, b);
    const auto ref = dense_solve(A, b);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], ref[i], 1e-13);
    const auto back = A.multiply(x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(back[i], b[i], 1e-13);
  }
}

TEST(Operator, RowSumsAndReflection) {
  const auto cfg = aluminum_rod();
  const auto A = diffusion_operator(cfg);
  const double dx = 0.2 / 100.0;
  const double r = diffusivity(cfg.material) / (dx * dx);
  ASSERT_EQ(A.size(), 101u);
  for (std::size_t j = 0; j < A.size(); ++j) {
    const double sum = A.diag[j] + (j > 0 ? A.lower[j] : 0.0) + (j + 1 < A.size() ? A.upper[j] : 0.0);
    EXPECT_NEAR(sum, 0.0, 1e-12 * r);
  }
  EXPECT_DOUBLE_EQ(A.upper[0], 2.0 * r);
  EXPECT_DOUBLE_EQ(A.diag[0], -2.0 * r);
  EXPECT_DOUBLE_EQ(A.lower[100], 2.0 * r);
  EXPECT_DOUBLE_EQ(A.diag[100], -2.0 * r);
  for (std::size_t j = 1; j + 1 < A.size(); ++j) {
    EXPECT_DOUBLE_EQ(A.lower[j], A.upper[j]);
  }
}

TEST(Semidiscretize, UniformStateNoFlux) {
  const auto cfg = aluminum_rod();
  const std::vector<double> state(101, 300.0);
  for (double v : semidiscretize(cfg, kNoFlux, 0.0, state)) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Semidiscretize, FluxHeatsOnlyLeftNode) {
  const auto cfg = aluminum_rod();
  const std::vector<double> state(101, 300.0);
  const double q = 5000.0;
  const auto rate = semidiscretize(cfg, [q](double) { return q; }, 0.0, state);
  const double dx = 0.002;
  const double expect = 2.0 * diffusivity(cfg.material) * q / (cfg.material.lambda * dx);
  EXPECT_NEAR(rate[0], expect, 1e-9 * expect);
  EXPECT_GT(rate[0], 0.0);
  for (std::size_t j = 1; j < rate.size(); ++j) EXPECT_NEAR(rate[j], 0.0, 1e-9);
}

TEST(Semidiscretize, CosineIsNearlyAnEigenfunction) {
  const auto cfg = aluminum_rod();
  const auto x = node_positions(cfg);
  std::vector<double> state(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) state[j] = std::cos(std::numbers::pi * x[j] / 0.2);
  const auto rate = semidiscretize(cfg, kNoFlux, 0.0, state);
  const double k2 = diffusivity(cfg.material) * std::pow(std::numbers::pi / 0.2, 2);
  for (std::size_t j = 0; j < x.size(); ++j) {
    // O(dx^2) truncation: relative (pi dx / L)^2 / 12 ~ 8e-5
    EXPECT_NEAR(rate[j], -k2 * state[j], 2e-4 * k2);
  }
}

TEST(Semidiscretize, RejectsWrongLength) {
  const auto cfg = aluminum_rod();
  EXPECT_THROW(semidiscretize(cfg, kNoFlux, 0.0, std::vector<double>(50, 1.0)),
               std::invalid_argument);
}

TEST(Simulate, ConstantStateStaysConstant) {
  const auto cfg = aluminum_rod(50.0);
  const auto res = simulate(cfg, kNoFlux);
  for (double v : res.field) EXPECT_NEAR(v, 300.0, 1e-10 * 300.0);
  for (double v : res.output_trace) EXPECT_NEAR(v, 300.0, 1e-10 * 300.0);
  EXPECT_LE(res.energy_residual, 1e-10);
}

TEST(Simulate, CosineModeDecay) {
  auto cfg = aluminum_rod();
  const double gamma = gamma_coefficient(cfg.material, cfg.geometry);
  cfg.t_end = gamma / (std::numbers::pi * std::numbers::pi);  // one e-folding
  cfg.theta0 = cosine_profile(cfg);
  cfg.probes = {0.2};
  const auto res = simulate(cfg, kNoFlux);
  const double rate = diffusivity(cfg.material) * std::pow(std::numbers::pi / 0.2, 2);
  const double analytic = std::exp(-rate * cfg.t_end);
  // the mode amplitude at x = L is cos(pi) = -1
  const double simulated = 300.0 - res.probe_traces[0].back();
  EXPECT_NEAR(simulated, analytic, 1e-3 * analytic);
  EXPECT_DOUBLE_EQ(res.probe_traces[0].back(), res.output_trace.back());
  EXPECT_NEAR(res.times.back(), cfg.t_end, 1e-12);
}

TEST(Simulate, SecondOrderInTime) {
  // Errors against the exact semi-discrete solution of the cosine mode.
  auto error_for = [](double dt) {
    auto cfg = aluminum_rod(40.0, dt);
    cfg.theta0 = cosine_profile(cfg);
    const auto res = simulate(cfg, kNoFlux);
    const double dx = 0.002;
    const double r = diffusivity(cfg.material) / (dx * dx);
    const double lambda_h = -2.0 * r * (1.0 - std::cos(std::numbers::pi * dx / 0.2));
    const double exact = 300.0 - std::exp(lambda_h * 40.0);
    return std::abs(res.output_trace.back() - exact);
  };
  const double e1 = error_for(4.0);
  const double e2 = error_for(2.0);
  const double e3 = error_for(1.0);
  EXPECT_GE(std::log2(e1 / e2), 1.9);
  EXPECT_GE(std::log2(e2 / e3), 1.9);
}

TEST(Simulate, MaximumPrincipleWithoutFlux) {
  // Smooth data at the production step size.
  {
    auto cfg = aluminum_rod(300.0, 0.1);
    const auto x = node_positions(cfg);
    cfg.theta0.resize(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
      cfg.theta0[j] = 300.0 + 40.0 * std::exp(-std::pow((x[j] - 0.07) / 0.03, 2)) -
                      15.0 * std::cos(std::numbers::pi * x[j] / 0.2);
    }
    const double lo = *std::min_element(cfg.theta0.begin(), cfg.theta0.end());
    const double hi = *std::max_element(cfg.theta0.begin(), cfg.theta0.end());
    const auto res = simulate(cfg, kNoFlux);
    EXPECT_GE(res.min_temperature, lo - 1e-9);
    EXPECT_LE(res.max_temperature, hi + 1e-9);
    EXPECT_LE(res.energy_residual, 1e-10);
  }
  // Rough data: Crank-Nicolson is monotone only for dt alpha / dx^2 <= 1.
  {
    auto cfg = aluminum_rod(50.0, 0.04);
    const double dx = 0.002;
    ASSERT_LE(cfg.dt * diffusivity(cfg.material) / (dx * dx), 1.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> U(250.0, 350.0);
    cfg.theta0.resize(101);
    for (double& v : cfg.theta0) v = U(rng);
    const double lo = *std::min_element(cfg.theta0.begin(), cfg.theta0.end());
    const double hi = *std::max_element(cfg.theta0.begin(), cfg.theta0.end());
    const auto res = simulate(cfg, kNoFlux);
    EXPECT_GE(res.min_temperature, lo - 1e-9);
    EXPECT_LE(res.max_temperature, hi + 1e-9);
  }
}

TEST(Simulate, ConstantFluxEnergyBalance) {
  auto cfg = aluminum_rod(100.0);
  const double q = 2.0e4;
  const auto res = simulate(cfg, [q](double) { return q; });
  const auto& m = cfg.material;
  for (std::size_t f = 0; f < res.frames(); ++f) {
    double mean = 0.0;
    const auto row = res.frame(f);
    for (std::size_t j = 0; j < row.size(); ++j) {
      mean += (j == 0 || j + 1 == row.size() ? 0.5 : 1.0) * row[j];
    }
    mean /= static_cast<double>(row.size() - 1);
    const double expect = 300.0 + q * res.times[f] / (m.rho * m.c * 0.2);
    EXPECT_NEAR(mean, expect, 1e-9 * expect);
  }
  const double residual = energy_audit(res, cfg, [q](double t) { return q * t; });
  EXPECT_LE(residual, 1e-6);
  EXPECT_LE(res.energy_residual, 1e-6);
}

TEST(Simulate, DetectsNonFiniteState) {
  const auto cfg = aluminum_rod(1.0);
  try {
    simulate(cfg, [](double t) { return t > 0.5 ? NAN : 0.0; });
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("step 6"), std::string::npos) << e.what();
  }
}

TEST(Simulate, ProbeInterpolation) {
  auto cfg = aluminum_rod(0.1);
  cfg.theta0.resize(101);
  const auto x = node_positions(cfg);
  for (std::size_t j = 0; j < x.size(); ++j) cfg.theta0[j] = 300.0 + 1000.0 * x[j];
  cfg.probes = {0.0, 0.05, 0.101, 0.2};
  cfg.t_end = cfg.dt;
  const auto res = simulate(cfg, kNoFlux);
  // linear profile is stationary in the interior; read frame 0
  EXPECT_DOUBLE_EQ(res.probe_traces[0][0], 300.0);
  EXPECT_NEAR(res.probe_traces[1][0], 350.0, 1e-9);
  EXPECT_NEAR(res.probe_traces[2][0], 401.0, 1e-9);
  EXPECT_NEAR(res.probe_traces[3][0], 500.0, 1e-9);
}

TEST(Simulate, FrameDecimation) {
  auto cfg = aluminum_rod(1000.0);
  cfg.max_frames = 2001;
  const auto res = simulate(cfg, kNoFlux);
  EXPECT_EQ(res.steps, 10000u);
  EXPECT_LE(res.frames(), 2001u);
  EXPECT_EQ(res.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(res.times.back(), 1000.0);
  EXPECT_EQ(res.field.size(), res.frames() * 101);
}

TEST(Simulate, RejectsBadConfig) {
  auto cfg = aluminum_rod();
  cfg.grid_points = 2;
  EXPECT_THROW(simulate(cfg, kNoFlux), ConfigError);
  cfg = aluminum_rod();
  cfg.probes = {0.3};
  EXPECT_THROW(simulate(cfg, kNoFlux), ConfigError);
  cfg = aluminum_rod();
  cfg.t_end = 0.01;
  EXPECT_THROW(simulate(cfg, kNoFlux), ConfigError);
  cfg = aluminum_rod();
  cfg.theta0 = {1.0, 2.0};
  EXPECT_THROW(simulate(cfg, kNoFlux), ConfigError);
}

TEST(InputSampler, InterpolatesAndIntegratesExactly) {
  const InputSampler s({0.0, 1.0, 3.0}, {0.0, 2.0, -2.0});
  EXPECT_EQ(s(-0.5), 0.0);
  EXPECT_EQ(s(3.5), 0.0);
  EXPECT_DOUBLE_EQ(s(0.5), 1.0);
  EXPECT_DOUBLE_EQ(s(2.0), 0.0);
  EXPECT_DOUBLE_EQ(s(3.0), -2.0);
  EXPECT_DOUBLE_EQ(s.integral(1.0), 1.0);
  EXPECT_DOUBLE_EQ(s.integral(2.0), 2.0);
  EXPECT_DOUBLE_EQ(s.integral(3.0), 1.0);
  EXPECT_DOUBLE_EQ(s.integral(10.0), 1.0);
  EXPECT_THROW(InputSampler({1.0, 0.0}, {0.0, 0.0}), std::invalid_argument);
}
