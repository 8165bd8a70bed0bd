#include "kantorovich/nonlin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"
#include "kantorovich/metrics.hpp"

namespace kantorovich {

Nonlinearity identity_family() {
  Nonlinearity g;
  g.eval = [](double, double u) { return u; };
  g.psi = phis::power(1.0);
  g.name = "identity";
  g.is_identity = true;
  return g;
}

Nonlinearity power_family(double a) {
  if (!(a > 0.0 && a < 1.0 / std::numbers::e)) config_error("power nonlinearity needs 0 < a < 1/e");
  Nonlinearity g;
  g.eval = [a](double w, double u) {
    if (u > a && u < 1.0) return std::pow(u, 1.0 - 1.0 / w);
    return u;
  };
  PhiFunction psi;
  psi.eval = [](double u) { return u <= 1.0 ? std::sqrt(u) : u; };
  psi.name = "root_then_linear";
  psi.family = "custom";
  g.psi = psi;
  g.name = "power(" + format_real(a) + ")";
  g.params = {a};
  g.jump = a;
  return g;
}

Nonlinearity parse_nonlinearity(std::string_view spec) {
  const CallSpec call = parse_call(spec);
  if (call.name == "identity" && call.args.empty()) return identity_family();
  if (call.name == "power" && call.args.size() == 1) return power_family(parse_real(call.args[0]));
  config_error("unknown nonlinearity '" + std::string(spec) + "'");
}

LipschitzReport check_lipschitz(const Nonlinearity& g, std::span<const double> w_list,
                                std::size_t random_samples, std::uint64_t seed) {
  if (w_list.empty()) config_error("lipschitz check needs at least one w");
  LipschitzReport out;
  out.w_tested.assign(w_list.begin(), w_list.end());
  std::sort(out.w_tested.begin(), out.w_tested.end());
  out.violations_per_w.assign(out.w_tested.size(), 0);

  auto probe = [&](std::size_t wi, double u, double v) {
    const double w = out.w_tested[wi];
    const double lhs = std::abs(g(w, u) - g(w, v));
    const double rhs = g.psi(std::abs(u - v));
    ++out.samples;
    if (rhs > 0.0) out.worst_ratio = std::max(out.worst_ratio, lhs / rhs);
    if (lhs > rhs * (1.0 + 1e-10)) {
      ++out.violations;
      ++out.violations_per_w[wi];
      const bool straddles = g.jump && (std::min(u, v) <= *g.jump) && (std::max(u, v) > *g.jump);
      if (!straddles) out.violations_straddle_jump = false;
    }
  };

  if (g(out.w_tested.front(), 0.0) != 0.0) config_error("nonlinearity violates g_w(0) = 0");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uv(-0.5, 2.0);
  std::uniform_int_distribution<std::size_t> pick(0, out.w_tested.size() - 1);
  for (std::size_t i = 0; i < random_samples; ++i) {
    const std::size_t wi = pick(rng);
    const double u = uv(rng);
    const double v = uv(rng);
    probe(wi, u, v);
  }
  if (g.jump) {
    const double a = *g.jump;
    for (std::size_t wi = 0; wi < out.w_tested.size(); ++wi)
      for (double eps = 1e-3; eps >= 1e-9; eps /= 10.0) {
        probe(wi, a, a + eps);
        probe(wi, a - eps, a + eps);
      }
  }
  if (out.violations == 0) out.violations_straddle_jump = false;
  for (std::size_t i = out.w_tested.size(); i-- > 0;) {
    if (out.violations_per_w[i] != 0) break;
    out.smallest_passing_w = out.w_tested[i];
  }
  return out;
}

std::vector<double> default_u_grid(const Nonlinearity& g, std::size_t dense) {
  std::vector<double> grid;
  for (int i = 0; i <= 90; ++i) grid.push_back(std::pow(10.0, -6.0 + 9.0 * i / 90.0));
  if (g.jump) {
    const double a = *g.jump;
    grid.push_back(a * (1.0 + 1e-9));
    for (std::size_t i = 0; i < dense; ++i) {
      const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(dense);
      grid.push_back(a + (1.0 - a) * t);
    }
  } else {
    for (std::size_t i = 1; i < dense; ++i) grid.push_back(static_cast<double>(i) / static_cast<double>(dense));
  }
  const std::size_t positives = grid.size();
  for (std::size_t i = 0; i < positives; i += 7) grid.push_back(-grid[i]);
  std::sort(grid.begin(), grid.end());
  return grid;
}

double t_w_product(const Nonlinearity& g, double unity_defect, double w, std::span<const double> u_grid) {
  if (!(unity_defect >= 0.0)) config_error("unity defect must be nonnegative");
  double best = 0.0;
  for (double u : u_grid) {
    if (u == 0.0) config_error("t_w_product: u grid must not contain 0");
    const double ratio = g(w, u) / u;
    if (unity_defect == 0.0) {
      best = std::max(best, std::abs(ratio - 1.0));
    } else {
      best = std::max({best, std::abs(ratio * (1.0 + unity_defect) - 1.0),
                       std::abs(ratio * (1.0 - unity_defect) - 1.0)});
    }
  }
  return best;
}

Deviation max_deviation(const Nonlinearity& g, double w, std::span<const double> u_grid) {
  Deviation out;
  for (double u : u_grid) {
    const double d = std::abs(g(w, u) - u);
    if (d > out.value) {
      out.value = d;
      out.argmax = u;
    }
  }
  return out;
}

RateCertificate fit_rate_certificate(std::vector<std::pair<double, double>> samples) {
  RateCertificate out;
  std::sort(samples.begin(), samples.end());
  out.samples = samples;
  for (const auto& [w, t] : samples)
    if (!(t >= 0.0)) numeric_error("rate certificate: negative T_w sample");
  if (!samples.empty() &&
      std::all_of(samples.begin(), samples.end(), [](const auto& s) { return s.second == 0.0; })) {
    out.theta0 = std::numeric_limits<double>::infinity();
    out.M2 = 0.0;
    return out;
  }
  std::vector<std::pair<double, double>> positive;
  for (const auto& s : samples)
    if (s.second > 0.0) positive.push_back(s);
  if (positive.size() < 4) numeric_error("rate certificate needs at least 4 positive samples");
  const RateFit fit = fit_rate(positive);
  out.theta0 = 0.0 - fit.slope;
  out.M2 = std::exp(fit.intercept);
  for (const auto& [w, t] : positive) out.M2 = std::max(out.M2, t * std::pow(w, out.theta0));
  return out;
}

}  // namespace kantorovich
