#include <gtest/gtest.h>

#include <cmath>

#include "flatheat/error.hpp"
#include "flatheat/materials.hpp"

using namespace flatheat;

namespace {

// Relative difference after rounding both to three significant digits.
double round_sig(double v, int digits) {
  const double scale = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::abs(v)))));
  return std::round(v * scale) / scale;
}

}  // namespace

TEST(Materials, TableDiffusivities) {
  const auto reg = MaterialRegistry::builtin();
  EXPECT_DOUBLE_EQ(round_sig(diffusivity(reg.at("aluminum")), 3), 9.75e-5);
  EXPECT_DOUBLE_EQ(round_sig(diffusivity(reg.at("steel-38Si7")), 3), 1.11e-5);
  EXPECT_DOUBLE_EQ(diffusivity(make_material("unit", 1.0, 1.0, 1.0)), 1.0);
}

TEST(Materials, GammaCoefficient) {
  const auto reg = MaterialRegistry::builtin();
  const RodGeometry rod{0.2};
  EXPECT_NEAR(gamma_coefficient(reg.at("aluminum"), rod), 410.0, 1.0);
  EXPECT_NEAR(gamma_coefficient(reg.at("steel-38Si7"), rod), 3588.0, 2.0);
  EXPECT_DOUBLE_EQ(gamma_coefficient(make_material("unit", 1, 1, 1), RodGeometry{1.0}), 1.0);
}

TEST(Materials, DiffusivityScaleInvariant) {
  const auto base = make_material("base", 237.0, 2700.0, 900.0);
  for (double k : {1e-3, 0.5, 3.0, 1e4}) {
    const auto scaled = make_material("scaled", base.lambda * k, base.rho * k, base.c);
    EXPECT_NEAR(diffusivity(scaled), diffusivity(base), 1e-15 * diffusivity(base));
  }
}

TEST(Materials, GammaMonotone) {
  const auto m = make_material("m", 40.0, 7800.0, 460.0);
  double prev = 0.0;
  for (double L = 0.05; L < 1.0; L += 0.05) {
    const double g = gamma_coefficient(m, RodGeometry{L});
    EXPECT_GT(g, prev);
    prev = g;
  }
  // larger alpha (conductivity) -> smaller gamma
  prev = INFINITY;
  for (double lambda = 10.0; lambda < 500.0; lambda *= 1.5) {
    const double g = gamma_coefficient(make_material("m", lambda, 7800.0, 460.0), RodGeometry{0.2});
    EXPECT_LT(g, prev);
    prev = g;
  }
}

TEST(Materials, RejectsNonPositive) {
  EXPECT_THROW(make_material("bad", 0.0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(make_material("bad", 1.0, -1.0, 1.0), ConfigError);
  EXPECT_THROW(make_material("bad", 1.0, 1.0, NAN), ConfigError);
  EXPECT_THROW(make_material("", 1.0, 1.0, 1.0), ConfigError);
  EXPECT_THROW(validate(RodGeometry{0.0}), ConfigError);
}

TEST(MaterialRegistry, BuiltinAndExtension) {
  auto reg = MaterialRegistry::builtin();
  EXPECT_EQ(reg.size(), 2u);
  EXPECT_EQ(reg.find("copper"), nullptr);
  EXPECT_THROW(reg.at("copper"), ConfigError);

  reg.add(make_material("copper", 401.0, 8960.0, 385.0));
  EXPECT_EQ(reg.size(), 3u);
  ASSERT_NE(reg.find("copper"), nullptr);

  // same name replaces
  reg.add(make_material("copper", 390.0, 8960.0, 385.0));
  EXPECT_EQ(reg.size(), 3u);
  EXPECT_DOUBLE_EQ(reg.at("copper").lambda, 390.0);
}
