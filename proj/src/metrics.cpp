#include "kantorovich/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "kantorovich/error.hpp"
#include "kantorovich/phi.hpp"

namespace kantorovich {

namespace {

double pth_power(double v, double p) {
  const double a = std::abs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  return std::pow(a, p);
}

double pth_root(double v, double p) {
  if (p == 1.0) return v;
  if (p == 2.0) return std::sqrt(v);
  return std::pow(v, 1.0 / p);
}

void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) config_error("lp_norm: p must be >= 1");
}

}  // namespace

NormResult lp_norm(const RealFn& h, double p, Interval domain, std::span<const double> breakpoints,
                   NormOptions options) {
  require_exponent(p);
  if (!(domain.hi >= domain.lo) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi))
    config_error("lp_norm: domain must be a finite interval");
  auto integrand = [&](double x) { return pth_power(h(x), p); };
  NormResult out;
  out.p = p;
  out.domain = domain;
  const PiecewiseOptions base{options.cells_per_piece};
  const double integral = integrate_piecewise(integrand, domain, breakpoints, base);
  out.value = pth_root(integral, p);
  out.quadrature_cells =
      (interior_breakpoints(domain, breakpoints).size() + 1) * static_cast<std::size_t>(base.cells_per_piece);
  if (options.check_stability) {
    const double refined =
        integrate_piecewise(integrand, domain, breakpoints, {2 * options.cells_per_piece});
    const double refined_value = pth_root(refined, p);
    out.stable = std::abs(refined_value - out.value) <= 1e-8 * std::abs(refined_value) + 1e-300;
    out.value = refined_value;
    out.quadrature_cells *= 2;
  }
  return out;
}

NormResult lp_norm(const Signal& f, const Signal& g, double p, Interval domain, NormOptions options) {
  std::vector<double> breaks = f.kinks;
  breaks.insert(breaks.end(), g.kinks.begin(), g.kinks.end());
  return lp_norm([&](double x) { return f(x) - g(x); }, p, domain, breaks, options);
}

NormResult lp_norm(const GridFunction& h, double p) {
  require_exponent(p);
  NormResult out;
  out.p = p;
  out.domain = {h.lo, h.hi};
  if (h.values.size() < 2) return out;
  const double step = (h.hi - h.lo) / static_cast<double>(h.values.size() - 1);
  const std::vector<double> wts = simpson_weights(h.values.size(), step);
  std::vector<double> terms(h.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = wts[i] * pth_power(h.values[i], p);
  out.value = pth_root(pairwise_sum(terms), p);
  out.quadrature_cells = h.values.size() - 1;
  return out;
}

double omega_p(const Signal& f, double delta, double p, Interval domain, int shift_count,
               NormOptions options) {
  if (!(delta > 0.0)) config_error("omega_p: delta must be positive");
  require_exponent(p);
  if (shift_count != 1 && shift_count < 9) config_error("omega_p: shift_count must be >= 9");
  const Interval window = domain.inflated(delta);
  double best = 0.0;
  for (double h : shift_grid(delta, shift_count)) {
    if (h == 0.0) continue;
    std::vector<double> breaks = f.kinks;
    for (double k : f.kinks) breaks.push_back(k - h);
    const NormResult r = lp_norm([&](double x) { return f(x + h) - f(x); }, p, window, breaks, options);
    best = std::max(best, r.value);
  }
  return best;
}

LipschitzCertificate certify_lipschitz(const Signal& f, double alpha, double p,
                                       std::span<const double> delta_ladder, int shift_count) {
  if (!(alpha > 0.0 && alpha <= 1.0)) config_error("certify_lipschitz: alpha must be in (0, 1]");
  if (delta_ladder.size() < 2) config_error("certify_lipschitz: ladder needs at least two deltas");
  LipschitzCertificate out;
  out.deltas.assign(delta_ladder.begin(), delta_ladder.end());
  std::sort(out.deltas.begin(), out.deltas.end(), std::greater<>());
  if (!(out.deltas.back() > 0.0)) config_error("certify_lipschitz: deltas must be positive");
  if (out.deltas.front() / out.deltas.back() < 100.0 * (1.0 - 1e-12))
    config_error("certify_lipschitz: ladder must span at least two decades");
  for (double d : out.deltas)
    out.ratios.push_back(omega_p(f, d, p, f.support, shift_count) / std::pow(d, alpha));
  out.C1 = *std::max_element(out.ratios.begin(), out.ratios.end());
  const double reference = out.ratios.front();
  out.pass = std::isfinite(out.C1) && (reference > 0.0 ? out.C1 < 10.0 * reference : out.C1 == 0.0);
  return out;
}

RateFit loglog_fit(std::vector<std::pair<double, double>> points, std::size_t min_points) {
  if (points.size() < std::max<std::size_t>(2, min_points))
    numeric_error("rate fit needs at least " + std::to_string(std::max<std::size_t>(2, min_points)) +
                  " points");
  for (const auto& [w, e] : points) {
    if (!(w > 0.0)) config_error("rate fit: w must be positive");
    if (!(e > 0.0)) numeric_error("rate fit: nonpositive error");
  }
  std::sort(points.begin(), points.end());
  const double n = static_cast<double>(points.size());
  double sx = 0.0, sy = 0.0;
  for (const auto& [w, e] : points) {
    sx += std::log(w);
    sy += std::log(e);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [w, e] : points) {
    const double dx = std::log(w) - mx;
    const double dy = std::log(e) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) numeric_error("rate fit: all w identical");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.points = std::move(points);
  return fit;
}

RateFit fit_rate(std::vector<std::pair<double, double>> points) {
  return loglog_fit(std::move(points), 4);
}

}  // namespace kantorovich
