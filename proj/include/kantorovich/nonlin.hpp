#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kantorovich/phi.hpp"

namespace kantorovich {

/// A family {g_w} with g_w(0) = 0 and a declared Lipschitz majorant psi,
/// |g_w(u) - g_w(v)| <= psi(|u - v|).
struct Nonlinearity {
  std::function<double(double w, double u)> eval;
  PhiFunction psi;
  std::string name;
  std::vector<double> params;
  std::optional<double> jump;  // location of a known discontinuity in u
  bool is_identity = false;

  double operator()(double w, double u) const { return eval(w, u); }
};

Nonlinearity identity_family();
// g_w(u) = u^{1 - 1/w} on (a, 1), u otherwise; 0 < a < 1/e.
// psi(u) = u^{1/2} for u <= 1 and u above.
Nonlinearity power_family(double a);

// `identity`, `power(a)`.
Nonlinearity parse_nonlinearity(std::string_view spec);

struct LipschitzReport {
  std::size_t samples = 0;
  std::size_t violations = 0;
  // every violating pair has u and v on opposite sides of the jump
  bool violations_straddle_jump = true;
  double worst_ratio = 0.0;  // max |g_w(u) - g_w(v)| / psi(|u - v|)
  std::vector<double> w_tested;
  std::vector<std::size_t> violations_per_w;
  // smallest tested w at and above which no violation was seen
  std::optional<double> smallest_passing_w;

  bool passed() const { return violations == 0; }
};

// Random (w, u, v) triples (u, v uniform on [-0.5, 2]) plus pairs that
// straddle the declared jump at distances 1e-3 .. 1e-9.
LipschitzReport check_lipschitz(const Nonlinearity& g, std::span<const double> w_list,
                                std::size_t random_samples = 10000, std::uint64_t seed = 1);

// Nonzero u samples: a log ladder over [1e-6, 1e3], a dense grid over
// (a, 1) with a(1 + 1e-9) when the family has a jump at a, and the negatives
// of the ladder.
std::vector<double> default_u_grid(const Nonlinearity& g, std::size_t dense = 20001);

// sup over u of |g_w(u) / u - 1| (unity_defect = 0), otherwise the larger of
// |g_w(u) / u (1 +- unity_defect) - 1|.
double t_w_product(const Nonlinearity& g, double unity_defect, double w, std::span<const double> u_grid);

struct Deviation {
  double value = 0.0;  // max |g_w(u) - u|
  double argmax = 0.0;
};
Deviation max_deviation(const Nonlinearity& g, double w, std::span<const double> u_grid);

struct RateCertificate {
  double theta0 = 0.0;  // +inf when every sample is exactly zero
  double M2 = 0.0;
  std::vector<std::pair<double, double>> samples;
};
// Fits log T_w = log M2 - theta0 log w, then raises M2 until M2 w^{-theta0}
// dominates every sample.
RateCertificate fit_rate_certificate(std::vector<std::pair<double, double>> samples);

}  // namespace kantorovich
