#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kantorovich/quadrature.hpp"
#include "kantorovich/signal.hpp"

namespace kantorovich {

/// A phi-function: continuous, nondecreasing, phi(0) = 0, positive for u > 0
/// and unbounded. Used in the roles of the Orlicz generator phi, the
/// auxiliary eta, and the Lipschitz majorant psi.
struct PhiFunction {
  std::function<double(double)> eval;
  std::string name;
  bool is_convex = false;
  std::string family;          // "power", "zygmund", "exp_minus_one", "power_sum", "custom"
  std::vector<double> params;  // family parameters in declaration order

  double operator()(double u) const { return eval(u); }
};

namespace phis {

PhiFunction power(double p);
// u^alpha * ln^beta(e + u)
PhiFunction zygmund(double alpha, double beta);
PhiFunction exp_minus_one();
// u^p + u^q
PhiFunction power_sum(double p, double q);

}  // namespace phis

// `power(p)`, `zygmund(alpha,beta)`, `exp_minus_one`, `power_sum(p,q)`.
PhiFunction parse_phi(std::string_view spec);

// Grid verification of the phi-function conditions.
struct PhiCheck {
  bool zero_at_origin = false;  // phi(0) == 0
  bool monotone_positive = false;
  bool unbounded_ladder = false;  // phi(10^k) strictly increasing, k = 1..6 (a proxy)
  bool midpoint_convex = true;    // only evaluated when is_convex is declared

  bool ok() const { return zero_at_origin && monotone_positive && unbounded_ladder && midpoint_convex; }
};
PhiCheck check_phi_function(const PhiFunction& phi, std::span<const double> u_grid);

// 0 together with `per_decade` log-spaced points over [1e-6, 1e6].
std::vector<double> standard_u_grid(int per_decade = 10);

/// Uniformly sampled function on [lo, hi].
struct GridFunction {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double x(std::size_t i) const;

  static GridFunction sample(const RealFn& f, Interval domain, std::size_t n);
};

// Quadrature of the modular  I^phi[lambda f] = int phi(lambda |f(x)|) dx.
double modular(const PhiFunction& phi, const GridFunction& f, double lambda);
// Same functional for an analytic integrand with known breakpoints.
double modular(const PhiFunction& phi, const RealFn& f, Interval domain,
               std::span<const double> breakpoints, double lambda, PiecewiseOptions options = {});
double modular(const PhiFunction& phi, const Signal& f, double lambda, PiecewiseOptions options = {});

// sup over a symmetric shift grid |t| <= delta of I^phi[lambda (f(. + t) - f(.))].
// The difference is integrated over `domain` inflated by delta, re-evaluating
// the analytic signal at shifted abscissae.
double orlicz_modulus(const PhiFunction& phi, const Signal& f, Interval domain, double delta,
                      double lambda, int shift_count = kDefaultShiftCount,
                      PiecewiseOptions options = {});

struct Delta2Result {
  bool satisfied = false;
  double M = 0.0;  // max of phi(2u) / phi(u) on the grid (may be +inf)
};
Delta2Result check_delta2(const PhiFunction& phi, std::span<const double> u_grid, double cap = 1e6);

/// Compatibility data for the growth condition phi(C_l psi(u)) <= eta(l u).
struct HTriple {
  PhiFunction phi;
  PhiFunction psi;
  PhiFunction eta;
  std::function<double(double)> c_lambda;
  std::string c_lambda_name;
};

// `power(r)`: C_lambda = lambda^r.
std::pair<std::function<double(double)>, std::string> parse_c_lambda(std::string_view spec);

bool check_H(const HTriple& triple, std::span<const double> lambdas, std::span<const double> u_grid);

struct ModularConvergence {
  bool converging = false;
  std::vector<double> values;
};
// Decreasing within 10% slack at every step and the last value below a
// quarter of the first (an all-zero sequence counts as converging).
ModularConvergence assess_modular_sequence(std::vector<double> values);
ModularConvergence detect_modular_convergence(
    const PhiFunction& phi, std::span<const std::pair<double, GridFunction>> errors, double lambda);

}  // namespace kantorovich
