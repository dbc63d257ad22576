#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "flatheat/error.hpp"
#include "flatheat/quadrature.hpp"

using namespace flatheat;

TEST(AdaptiveSimpson, Polynomials) {
  // Simpson is exact for cubics.
  auto r = adaptive_simpson([](double x) { return x * x * x - 2.0 * x + 1.0; }, 0.0, 2.0, 1e-12);
  EXPECT_NEAR(r.value, 4.0 - 4.0 + 2.0, 1e-13);
}

TEST(AdaptiveSimpson, SmoothAndPeaked) {
  auto r = adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
  EXPECT_NEAR(r.value, 2.0, 1e-11);

  // narrow Gaussian, integral sqrt(pi) * 1e-3
  auto g = adaptive_simpson([](double x) { return std::exp(-std::pow((x - 0.3) / 1e-3, 2)); },
                            0.0, 1.0, 1e-10);
  EXPECT_NEAR(g.value, std::sqrt(std::numbers::pi) * 1e-3, 1e-12);
}

TEST(AdaptiveSimpson, BudgetExhaustion) {
  EXPECT_THROW(adaptive_simpson([](double x) { return 1.0 / std::sqrt(x + 1e-300); }, 0.0, 1.0,
                                1e-14, 0.0, 128, 4),
               NumericalError);
}

TEST(AdaptiveSimpson, EmptyInterval) {
  EXPECT_EQ(adaptive_simpson([](double) { return 1.0; }, 1.0, 1.0, 1e-8).value, 0.0);
}

TEST(IntegrateSamples, OddEvenAndNonUniform) {
  for (std::size_t n : {5u, 6u, 101u, 100u}) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
      y[i] = x[i] * x[i] * x[i];
    }
    EXPECT_NEAR(integrate_samples(x, y), 4.0, 1e-12) << "n = " << n;
  }
  const std::vector<double> x{0.0, 0.1, 0.5, 1.0};
  const std::vector<double> y{0.0, 0.1, 0.5, 1.0};
  EXPECT_FALSE(is_uniform_grid(x));
  EXPECT_NEAR(integrate_samples(x, y), 0.5, 1e-15);
  EXPECT_THROW(integrate_samples(std::vector<double>{1.0}, std::vector<double>{1.0}),
               std::invalid_argument);
}

TEST(CompensatedSum, RecoversSmallTerms) {
  CompensatedSum s;
  s.add(1e20);
  for (int i = 0; i < 1000; ++i) s.add(1.0);
  s.add(-1e20);
  EXPECT_DOUBLE_EQ(s.value(), 1000.0);
}
