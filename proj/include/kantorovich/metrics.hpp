#pragma once

#include <span>
#include <utility>
#include <vector>

#include "kantorovich/quadrature.hpp"
#include "kantorovich/signal.hpp"

namespace kantorovich {

struct GridFunction;

struct NormOptions {
  int cells_per_piece = 2;
  // Recompute with doubled cells and record whether the two agree to 1e-8.
  bool check_stability = true;
};

struct NormResult {
  double p = 1.0;
  double value = 0.0;
  Interval domain;
  std::size_t quadrature_cells = 0;
  bool stable = true;
};

// (int_domain |h(x)|^p dx)^{1/p}, split at `breakpoints`.
NormResult lp_norm(const RealFn& h, double p, Interval domain, std::span<const double> breakpoints,
                   NormOptions options = {});
// ||f - g||_p over `domain`, splitting at the kinks of both signals.
NormResult lp_norm(const Signal& f, const Signal& g, double p, Interval domain,
                   NormOptions options = {});
// Sampled difference on a uniform grid (composite Simpson).
NormResult lp_norm(const GridFunction& h, double p);

// sup over a symmetric grid of shifts |h| <= delta of ||f(. + h) - f(.)||_p,
// integrated over `domain` inflated by delta.
double omega_p(const Signal& f, double delta, double p, Interval domain,
               int shift_count = kDefaultShiftCount, NormOptions options = {.check_stability = false});

struct LipschitzCertificate {
  double C1 = 0.0;  // max over the ladder of omega_p(f, d) / d^alpha
  bool pass = false;
  std::vector<double> deltas;  // sorted decreasing
  std::vector<double> ratios;
};

// Checks omega_p(f, d) = O(d^alpha) on a ladder spanning at least two
// decades: passes when no ratio exceeds ten times the ratio at the largest
// delta (ratios that stay bounded or decrease as d -> 0).
LipschitzCertificate certify_lipschitz(const Signal& f, double alpha, double p,
                                       std::span<const double> delta_ladder,
                                       int shift_count = kDefaultShiftCount);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (w, error), sorted by w
};

// Least squares of log(error) against log(w). Needs >= 4 points, all positive.
RateFit fit_rate(std::vector<std::pair<double, double>> points);
// Same fit with a configurable minimum point count (>= 2).
RateFit loglog_fit(std::vector<std::pair<double, double>> points, std::size_t min_points);

}  // namespace kantorovich
