#include "flatheat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "flatheat/error.hpp"

namespace flatheat {

namespace {

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;     // Simpson on [a, b]
  double refined;   // Simpson on both halves
  double flm, frm;  // quarter-point values used by `refined`
  double error;

  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                 double fb) {
  const double m = 0.5 * (a + b);
  const double flm = f(0.5 * (a + m));
  const double frm = f(0.5 * (m + b));
  const double h = b - a;
  const double whole = h / 6.0 * (fa + 4.0 * fm + fb);
  const double refined = h / 12.0 * (fa + 4.0 * flm + 2.0 * fm + 4.0 * frm + fb);
  return Panel{a, b, fa, fm, fb, whole, refined, flm, frm, std::abs(refined - whole) / 15.0};
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, double abs_floor, std::size_t max_panels,
                                  std::size_t initial_panels) {
  if (!(b > a)) {
    return {};
  }
  if (initial_panels == 0) initial_panels = 1;

  std::priority_queue<Panel> heap;
  double value = 0.0;
  double error = 0.0;
  const double h = (b - a) / static_cast<double>(initial_panels);
  double x0 = a;
  double f0 = f(a);
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double x1 = (i + 1 == initial_panels) ? b : a + h * static_cast<double>(i + 1);
    const double f1 = f(x1);
    Panel p = make_panel(f, x0, x1, f0, f(0.5 * (x0 + x1)), f1);
    value += p.refined + (p.refined - p.whole) / 15.0;
    error += p.error;
    heap.push(p);
    x0 = x1;
    f0 = f1;
  }

  while (error > std::max(rel_tol * std::abs(value), abs_floor)) {
    if (heap.size() >= max_panels) {
      throw NumericalError("adaptive Simpson: panel budget exhausted");
    }
    Panel p = heap.top();
    heap.pop();
    value -= p.refined + (p.refined - p.whole) / 15.0;
    error -= p.error;
    const double m = 0.5 * (p.a + p.b);
    Panel left = make_panel(f, p.a, m, p.fa, p.flm, p.fm);
    Panel right = make_panel(f, m, p.b, p.fm, p.frm, p.fb);
    for (const Panel* q : {&left, &right}) {
      value += q->refined + (q->refined - q->whole) / 15.0;
      error += q->error;
    }
    heap.push(left);
    heap.push(right);
    // keep the running error from drifting negative through cancellation
    if (error < 0.0) error = 0.0;
  }

  // Re-sum from the heap to shed accumulated round-off in the running totals.
  CompensatedSum total;
  CompensatedSum err;
  const std::size_t panels = heap.size();
  while (!heap.empty()) {
    const Panel& p = heap.top();
    total.add(p.refined + (p.refined - p.whole) / 15.0);
    err.add(p.error);
    heap.pop();
  }
  return {total.value(), err.value(), panels};
}

bool is_uniform_grid(std::span<const double> x, double rel_tol) {
  if (x.size() < 3) return true;
  const double h = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (std::abs((x[i] - x[i - 1]) - h) > rel_tol * std::abs(h)) return false;
  }
  return true;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("trapezoid: size mismatch");
  CompensatedSum s;
  for (std::size_t i = 1; i < x.size(); ++i) {
    s.add(0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]));
  }
  return s.value();
}

double integrate_samples(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("integrate_samples: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw std::invalid_argument("integrate_samples: need at least two samples");
  if (n < 4 || !is_uniform_grid(x)) {
    if (n == 3 && is_uniform_grid(x)) {
      return (x[2] - x[0]) / 6.0 * (y[0] + 4.0 * y[1] + y[2]);
    }
    return trapezoid(x, y);
  }

  const double h = (x.back() - x.front()) / static_cast<double>(n - 1);
  // Simpson needs an even number of intervals; close with 3/8 otherwise.
  const std::size_t intervals = n - 1;
  const std::size_t simpson_end = (intervals % 2 == 0) ? intervals : intervals - 3;
  CompensatedSum s;
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    s.add(h / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]));
  }
  if (simpson_end != intervals) {
    const std::size_t i = simpson_end;
    s.add(3.0 * h / 8.0 * (y[i] + 3.0 * y[i + 1] + 3.0 * y[i + 2] + y[i + 3]));
  }
  return s.value();
}

}  // namespace flatheat
