#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace flatheat {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t panels = 0;
};

/// Globally adaptive Simpson rule on [a, b].
///
/// The panel with the largest Richardson error estimate is bisected until the
/// summed estimate drops below rel_tol * |value| (or abs_floor, whichever is
/// larger). The interval is first cut into `initial_panels` pieces so that a
/// narrow bump cannot be missed by a single coarse panel. Throws
/// NumericalError when more than max_panels panels would be needed.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_floor = 0.0,
                                  std::size_t max_panels = std::size_t{1} << 20,
                                  std::size_t initial_panels = 64);

/// Integral of sampled data on a sorted grid. Uniform grids use composite
/// Simpson (with a 3/8 closing panel for an even sample count); non-uniform
/// grids fall back to the trapezoid rule. Needs at least two samples.
double integrate_samples(std::span<const double> x, std::span<const double> y);

/// Trapezoid rule on a sorted grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

/// True if consecutive spacings agree to rel_tol of the mean spacing.
bool is_uniform_grid(std::span<const double> x, double rel_tol = 1e-9);

/// Neumaier (improved Kahan) running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace flatheat
