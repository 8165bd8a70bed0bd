#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "kantorovich/quadrature.hpp"

namespace kantorovich {

// An analytic test signal f: R -> R. `support` is the interval outside of
// which f vanishes (or is negligible, see `support_note`). `kinks` lists the
// points where f or its derivative is discontinuous, plus extra split points
// where piecewise quadrature needs them; integrators split there.
struct Signal {
  RealFn eval;
  Interval support;
  std::vector<double> kinks;
  // Exponent alpha of the Lipschitz class Lip(alpha, p) the signal is known
  // to belong to, as a function of p. Empty when undeclared.
  std::function<double(double)> lip_alpha;
  std::string name;
  std::string support_note;

  double operator()(double x) const { return eval(x); }

  // x -> f(x + t), with support and kinks moved accordingly.
  Signal shifted(double t) const;
};

namespace signals {

Signal zero();
// max(0, 1 - |x - c| / h)
Signal hat(double center, double half_width);
// Compactly supported rough bump on [c - h, c + h]: a Takagi-type series
// sum_j 2^{-j/2} dist(2^j s, Z) in the rescaled variable s in [0, 1]. It
// grows like the square root of the distance to either edge and has
// square-root increments at every dyadic scale down to 2^{-depth}, so its
// L^p modulus of smoothness behaves like delta^{1/2} for every p.
Signal root_bump(double center, double half_width, int depth = 14);
// max(0, 1 - |x - c| / h)^{1/2}
Signal sqrt_bump(double center, double half_width);
// exp(-(x - c)^2 / (2 s^2)), support truncated at 10 s (tail < 2e-22).
Signal gauss(double center, double sigma);
// indicator of [a, b]
Signal box(double a, double b);

}  // namespace signals

// Parses `hat(c,h)`, `root_bump(c,h)`, `sqrt_bump(c,h)`, `gauss(c,s)`,
// `box(a,b)` and `zero`.
Signal parse_signal(std::string_view spec);

// Splits "name(a,b,...)" into name and numeric arguments. Throws a config
// error on malformed input.
struct CallSpec {
  std::string name;
  std::vector<std::string> args;
};
CallSpec parse_call(std::string_view spec);
double parse_real(std::string_view text);
int parse_int(std::string_view text);

}  // namespace kantorovich
