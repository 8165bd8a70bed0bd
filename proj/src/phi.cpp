#include "kantorovich/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"

namespace kantorovich {

namespace phis {

PhiFunction power(double p) {
  if (!(p > 0.0)) config_error("power phi-function needs p > 0");
  PhiFunction phi;
  phi.eval = [p](double u) { return p == 1.0 ? u : (p == 2.0 ? u * u : std::pow(u, p)); };
  phi.name = "power(" + format_real(p) + ")";
  phi.is_convex = p >= 1.0;
  phi.family = "power";
  phi.params = {p};
  return phi;
}

PhiFunction zygmund(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) config_error("zygmund phi-function needs alpha, beta > 0");
  PhiFunction phi;
  phi.eval = [alpha, beta](double u) {
    return std::pow(u, alpha) * std::pow(std::log(std::numbers::e + u), beta);
  };
  phi.name = "zygmund(" + format_real(alpha) + "," + format_real(beta) + ")";
  phi.is_convex = alpha >= 1.0;
  phi.family = "zygmund";
  phi.params = {alpha, beta};
  return phi;
}

PhiFunction exp_minus_one() {
  PhiFunction phi;
  phi.eval = [](double u) { return std::expm1(u); };
  phi.name = "exp_minus_one";
  phi.is_convex = true;
  phi.family = "exp_minus_one";
  return phi;
}

PhiFunction power_sum(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) config_error("power_sum phi-function needs p, q > 0");
  PhiFunction phi;
  phi.eval = [p, q](double u) { return std::pow(u, p) + std::pow(u, q); };
  phi.name = "power_sum(" + format_real(p) + "," + format_real(q) + ")";
  phi.is_convex = p >= 1.0 && q >= 1.0;
  phi.family = "power_sum";
  phi.params = {p, q};
  return phi;
}

}  // namespace phis

PhiFunction parse_phi(std::string_view spec) {
  const CallSpec call = parse_call(spec);
  auto need = [&](std::size_t n) {
    if (call.args.size() != n)
      config_error("phi-function '" + call.name + "' expects " + std::to_string(n) + " arguments");
  };
  if (call.name == "power") {
    need(1);
    return phis::power(parse_real(call.args[0]));
  }
  if (call.name == "zygmund") {
    need(2);
    return phis::zygmund(parse_real(call.args[0]), parse_real(call.args[1]));
  }
  if (call.name == "exp_minus_one") {
    need(0);
    return phis::exp_minus_one();
  }
  if (call.name == "power_sum") {
    need(2);
    return phis::power_sum(parse_real(call.args[0]), parse_real(call.args[1]));
  }
  config_error("unknown phi-function '" + call.name + "'");
}

PhiCheck check_phi_function(const PhiFunction& phi, std::span<const double> u_grid) {
  PhiCheck out;
  out.zero_at_origin = phi(0.0) == 0.0;

  std::vector<double> grid(u_grid.begin(), u_grid.end());
  std::sort(grid.begin(), grid.end());
  out.monotone_positive = true;
  double prev = phi(0.0);
  for (double u : grid) {
    const double v = phi(u);
    if (v < prev || (u > 0.0 && !(v > 0.0))) out.monotone_positive = false;
    prev = v;
  }

  out.unbounded_ladder = true;
  double last = phi(1.0);
  for (int k = 1; k <= 6; ++k) {
    const double v = phi(std::pow(10.0, k));
    if (!(v > last) && !std::isinf(v)) out.unbounded_ladder = false;
    last = v;
  }

  if (phi.is_convex) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
      for (std::size_t j = i + 1; j < grid.size(); ++j) {
        const double mid = phi(0.5 * (grid[i] + grid[j]));
        const double chord = 0.5 * (phi(grid[i]) + phi(grid[j]));
        if (mid > chord + 1e-12 * std::abs(chord)) out.midpoint_convex = false;
      }
    }
  }
  return out;
}

std::vector<double> standard_u_grid(int per_decade) {
  std::vector<double> grid{0.0};
  const int n = 12 * per_decade;
  for (int i = 0; i <= n; ++i) grid.push_back(std::pow(10.0, -6.0 + 12.0 * i / n));
  return grid;
}

double GridFunction::x(std::size_t i) const {
  if (values.size() < 2) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(values.size() - 1);
}

GridFunction GridFunction::sample(const RealFn& f, Interval domain, std::size_t n) {
  GridFunction g{domain.lo, domain.hi, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) g.values[i] = f(g.x(i));
  return g;
}

double modular(const PhiFunction& phi, const GridFunction& f, double lambda) {
  if (!(lambda > 0.0)) config_error("modular: lambda must be positive");
  if (f.values.empty() || !(f.hi > f.lo)) numeric_error("empty domain");
  for (double v : f.values)
    if (!std::isfinite(v)) numeric_error("non-finite input");
  if (f.values.size() == 1) return 0.0;
  const double h = (f.hi - f.lo) / static_cast<double>(f.values.size() - 1);
  const std::vector<double> w = simpson_weights(f.values.size(), h);
  std::vector<double> terms(f.values.size());
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = w[i] * phi(lambda * std::abs(f.values[i]));
  return pairwise_sum(terms);
}

double modular(const PhiFunction& phi, const RealFn& f, Interval domain,
               std::span<const double> breakpoints, double lambda, PiecewiseOptions options) {
  if (!(lambda > 0.0)) config_error("modular: lambda must be positive");
  if (!(domain.hi >= domain.lo)) numeric_error("empty domain");
  return integrate_piecewise(
      [&](double x) {
        const double v = f(x);
        if (!std::isfinite(v)) numeric_error("non-finite input");
        return phi(lambda * std::abs(v));
      },
      domain, breakpoints, options);
}

double modular(const PhiFunction& phi, const Signal& f, double lambda, PiecewiseOptions options) {
  return modular(phi, f.eval, f.support, f.kinks, lambda, options);
}

double orlicz_modulus(const PhiFunction& phi, const Signal& f, Interval domain, double delta,
                      double lambda, int shift_count, PiecewiseOptions options) {
  if (!(delta > 0.0)) config_error("orlicz_modulus: delta must be positive");
  const Interval window = domain.inflated(delta);
  double best = 0.0;
  for (double t : shift_grid(delta, shift_count)) {
    if (t == 0.0) continue;  // f(. + 0) - f(.) vanishes identically
    std::vector<double> breaks = f.kinks;
    for (double k : f.kinks) breaks.push_back(k - t);
    const double v = modular(
        phi, [&](double x) { return f(x + t) - f(x); }, window, breaks, lambda, options);
    best = std::max(best, v);
  }
  return best;
}

Delta2Result check_delta2(const PhiFunction& phi, std::span<const double> u_grid, double cap) {
  Delta2Result out;
  for (double u : u_grid) {
    if (!(u > 0.0)) config_error("check_delta2: grid entries must be positive");
    const double base = phi(u);
    if (!(base > 0.0)) numeric_error("Phi2 violated: phi(" + format_real(u) + ") = 0");
    double ratio = phi(2.0 * u) / base;
    if (std::isnan(ratio)) ratio = std::numeric_limits<double>::infinity();  // inf / inf
    out.M = std::max(out.M, ratio);
  }
  out.satisfied = std::isfinite(out.M) && out.M <= cap;
  return out;
}

std::pair<std::function<double(double)>, std::string> parse_c_lambda(std::string_view spec) {
  const CallSpec call = parse_call(spec);
  if (call.name == "power" && call.args.size() == 1) {
    const double r = parse_real(call.args[0]);
    if (!(r > 0.0)) config_error("c_lambda power exponent must be positive");
    return {[r](double lambda) { return std::pow(lambda, r); }, "power(" + call.args[0] + ")"};
  }
  config_error("unknown c_lambda rule '" + std::string(spec) + "'");
}

bool check_H(const HTriple& triple, std::span<const double> lambdas, std::span<const double> u_grid) {
  bool holds = true;
  for (double lambda : lambdas) {
    const double c = triple.c_lambda(lambda);
    if (!(c > 0.0 && c < 1.0))
      config_error("C_lambda outside (0, 1) at lambda = " + format_real(lambda));
    for (double u : u_grid) {
      const double lhs = triple.phi(c * triple.psi(u));
      const double rhs = triple.eta(lambda * u);
      if (lhs > rhs + 1e-12 * (1.0 + rhs)) holds = false;
    }
  }
  return holds;
}

ModularConvergence assess_modular_sequence(std::vector<double> values) {
  if (values.size() < 3) numeric_error("insufficient sequence");
  ModularConvergence out;
  out.values = std::move(values);
  const auto& v = out.values;
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; })) {
    out.converging = true;
    return out;
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] > 1.1 * v[i - 1]) decreasing = false;
  out.converging = decreasing && v.back() < v.front() / 4.0;
  return out;
}

ModularConvergence detect_modular_convergence(
    const PhiFunction& phi, std::span<const std::pair<double, GridFunction>> errors, double lambda) {
  if (errors.size() < 3) numeric_error("insufficient sequence");
  std::vector<double> values;
  values.reserve(errors.size());
  for (const auto& [w, err] : errors) values.push_back(modular(phi, err, lambda));
  return assess_modular_sequence(std::move(values));
}

}  // namespace kantorovich
