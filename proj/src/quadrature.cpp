#include "kantorovich/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kantorovich/error.hpp"

namespace kantorovich {

Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::vector<double> simpson_weights(std::size_t n, double h) {
  if (n < 2) config_error("simpson_weights: need at least two samples");
  std::vector<double> w(n, 0.0);
  if (n == 2) {
    w[0] = w[1] = 0.5 * h;
    return w;
  }
  auto add_simpson = [&](std::size_t first, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      const double c = (i == 0 || i + 1 == count) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      w[first + i] += c * h / 3.0;
    }
  };
  auto add_three_eighths = [&](std::size_t first) {
    constexpr double c[4] = {1.0, 3.0, 3.0, 1.0};
    for (std::size_t i = 0; i < 4; ++i) w[first + i] += c[i] * 3.0 * h / 8.0;
  };
  if (n % 2 == 1) {
    add_simpson(0, n);
  } else if (n == 4) {
    add_three_eighths(0);
  } else {
    add_simpson(0, n - 3);
    add_three_eighths(n - 4);
  }
  return w;
}

double simpson(const RealFn& f, double a, double b, int cells) {
  if (cells < 1) config_error("simpson: cells must be positive");
  const int n = 2 * cells;
  const double h = (b - a) / n;
  double ends = f(a) + f(b);
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < n; ++i) {
    const double v = f(a + i * h);
    (i % 2 == 1 ? odd : even) += v;
  }
  return h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
}

std::vector<double> interior_breakpoints(Interval domain, std::span<const double> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (double p : points)
    if (p > domain.lo && p < domain.hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  const double scale = std::max({1.0, std::abs(domain.lo), std::abs(domain.hi)});
  const double merge = 1e-12 * scale;
  std::vector<double> merged;
  merged.reserve(out.size());
  double last = domain.lo;
  for (double p : out) {
    if (p - last > merge && domain.hi - p > merge) {
      merged.push_back(p);
      last = p;
    }
  }
  return merged;
}

double integrate_piecewise(const RealFn& f, Interval domain, std::span<const double> breakpoints,
                           PiecewiseOptions options) {
  if (!(domain.hi > domain.lo)) return 0.0;
  if (options.cells_per_piece < 1) config_error("integrate_piecewise: cells_per_piece < 1");
  const std::vector<double> inner = interior_breakpoints(domain, breakpoints);
  std::vector<double> edges;
  edges.reserve(inner.size() + 2);
  edges.push_back(domain.lo);
  edges.insert(edges.end(), inner.begin(), inner.end());
  edges.push_back(domain.hi);

  const double scale = std::max({1.0, std::abs(domain.lo), std::abs(domain.hi)});
  const double base_nudge = 64.0 * std::numeric_limits<double>::epsilon() * scale;
  const int n = 2 * options.cells_per_piece;

  std::vector<double> pieces(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i];
    const double b = edges[i + 1];
    const double h = (b - a) / n;
    const double nudge = std::min(base_nudge, 1e-9 * (b - a));
    double ends = f(std::max(a + nudge, std::nextafter(a, b))) + f(std::min(b - nudge, std::nextafter(b, a)));
    double odd = 0.0;
    double even = 0.0;
    for (int j = 1; j < n; ++j) {
      const double v = f(a + j * h);
      (j % 2 == 1 ? odd : even) += v;
    }
    pieces[i] = h / 3.0 * (ends + 4.0 * odd + 2.0 * even);
  }
  return pairwise_sum(pieces);
}

namespace {

AdaptiveResult adaptive_step(const RealFn& f, double a, double b, double fa, double fm, double fb,
                             double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return {left + right + delta / 15.0, std::abs(delta) / 15.0, depth > 0 || std::abs(delta) <= 15.0 * tol};
  }
  const AdaptiveResult l = adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
  const AdaptiveResult r = adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
  return {l.value + r.value, l.error_estimate + r.error_estimate, l.converged && r.converged};
}

}  // namespace

AdaptiveResult adaptive_simpson(const RealFn& f, double a, double b, double abs_tol,
                                int max_depth) {
  if (!(b > a)) return {};
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

std::vector<double> shift_grid(double delta, int count) {
  if (!(delta > 0.0)) config_error("shift grid: delta must be positive");
  if (count == 1) return {0.0};
  if (count < 3 || count % 2 == 0) config_error("shift grid: count must be odd and >= 3 (or 1)");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const int mid = count / 2;
  for (int i = 0; i < count; ++i) grid[i] = delta * static_cast<double>(i - mid) / mid;
  grid.front() = -delta;
  grid[mid] = 0.0;
  grid.back() = delta;
  return grid;
}

}  // namespace kantorovich
