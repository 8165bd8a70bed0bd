#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace kantorovich {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  Interval inflated(double margin) const { return {lo - margin, hi + margin}; }
};

Interval hull(const Interval& a, const Interval& b);

using RealFn = std::function<double(double)>;

// Pairwise (cascade) summation with a fixed split rule. The result depends
// only on the order of `values`, never on how the caller produced them.
double pairwise_sum(std::span<const double> values);

// Composite Simpson weights for `n` equispaced samples with spacing h (n >= 2).
// Odd n uses the classic 1-4-2-...-4-1 rule; even n closes with a
// three-eighths panel; n == 2 is the trapezoid.
std::vector<double> simpson_weights(std::size_t n, double h);

// Composite Simpson on [a, b] with `cells` panels (two sub-intervals each).
double simpson(const RealFn& f, double a, double b, int cells);

struct PiecewiseOptions {
  int cells_per_piece = 2;
};

// Integrates f over `domain`, splitting it at every breakpoint that falls
// strictly inside. Endpoint samples of each piece are taken a few ulps
// inside the piece, so jump discontinuities located at breakpoints are
// integrated as one-sided limits. Exact for piecewise cubics whose pieces
// are delimited by the breakpoints.
double integrate_piecewise(const RealFn& f, Interval domain, std::span<const double> breakpoints,
                           PiecewiseOptions options = {});

// Sorted, de-duplicated breakpoints of `points` lying strictly inside `domain`.
std::vector<double> interior_breakpoints(Interval domain, std::span<const double> points);

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
};

// Recursive adaptive Simpson with Richardson correction.
AdaptiveResult adaptive_simpson(const RealFn& f, double a, double b, double abs_tol,
                                int max_depth = 40);

// Symmetric shift grid for sup-over-|t|<=delta approximations. `count` is odd;
// the grid always contains -delta, 0 and +delta. count == 1 is the degenerate
// grid {0}.
std::vector<double> shift_grid(double delta, int count);

inline constexpr int kDefaultShiftCount = 33;

}  // namespace kantorovich
