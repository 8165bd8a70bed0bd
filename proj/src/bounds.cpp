#include "kantorovich/bounds.hpp"

#include <cmath>
#include <limits>

#include "kantorovich/error.hpp"

namespace kantorovich {

namespace {

double decay(double w, double exponent) {
  if (std::isinf(exponent)) return 0.0;
  return std::pow(w, -exponent);
}

}  // namespace

ModularBound modular_bound_rhs(const ModularBoundInputs& in) {
  if (!(in.m0 > 0.0)) config_error("modular bound: m0 must be positive");
  if (!(in.delta_lo > 0.0)) config_error("modular bound: delta must be positive");
  if (!(in.w > 0.0)) config_error("modular bound: w must be positive");
  if (!(in.alpha > 0.0 && in.alpha < 1.0)) config_error("modular bound: alpha must be in (0, 1)");
  ModularBound b;
  const double scale = 3.0 * in.delta_lo * in.m0;
  b.omega_small = in.l1_norm / scale * in.omega_eta_at_w_alpha;
  if (!in.compact_support) b.tail = in.M1 * in.I_eta_lambda0_f / scale * std::pow(in.w, -in.alpha0);
  b.omega_large = in.Delta / (3.0 * in.delta_lo) * in.omega_eta_at_Delta_w;
  b.third = in.I_phi_lambda0_f > 0.0 ? in.I_phi_lambda0_f / 3.0 * decay(in.w, in.theta0) : 0.0;
  b.total = b.omega_small + b.tail + b.omega_large + b.third;
  return b;
}

LpBound lp_bound_rhs(const LpBoundInputs& in) {
  if (in.Mp.infinite || !std::isfinite(in.Mp.value))
    config_error("moment condition violated: M_p(L) is infinite for p = " + std::to_string(in.p));
  if (!(in.p >= 1.0)) config_error("lp bound: p must be >= 1");
  if (!(in.delta_lo > 0.0)) config_error("lp bound: delta must be positive");
  if (!(in.w > 0.0)) config_error("lp bound: w must be positive");
  const double p = in.p;
  const double inv_delta = std::pow(in.delta_lo, -1.0 / p);
  LpBound b;
  b.omega_small = inv_delta * std::pow(2.0 * in.m0, (p - 1.0) / p) * std::pow(in.l1_norm + in.Mp.value, 1.0 / p) *
                  in.omega_p_at_1_w;
  b.omega_large = inv_delta * in.m0 * std::pow(in.Delta, 1.0 / p) * in.omega_p_at_Delta_w;
  b.third = in.M2 > 0.0 ? in.M2 * in.f_pnorm * decay(in.w, in.theta0) : 0.0;
  b.total = b.omega_small + b.omega_large + b.third;
  return b;
}

LpBound lip_rate_bound(double p, double alpha, double C1, LpBoundInputs constants, double w) {
  if (!(alpha > 0.0 && alpha <= 1.0)) config_error("lip rate bound: alpha must be in (0, 1]");
  constants.p = p;
  constants.w = w;
  constants.omega_p_at_1_w = C1 * std::pow(1.0 / w, alpha);
  constants.omega_p_at_Delta_w = C1 * std::pow(constants.Delta / w, alpha);
  return lp_bound_rhs(constants);
}

Comparison compare(double measured, double bound) {
  Comparison c;
  c.holds = measured <= bound * (1.0 + 1e-9);
  c.slack = measured == 0.0 ? std::numeric_limits<double>::infinity() : bound / measured;
  return c;
}

ProofConstants proof_constants(double lambda0, double m0, double M2,
                               const std::function<double(double)>& c_lambda) {
  if (!(lambda0 > 0.0)) config_error("lambda0 must be positive");
  if (!(m0 > 0.0)) config_error("m0 must be positive");
  ProofConstants out;
  out.lambda0 = lambda0;
  out.lambda = 0.5 * std::min(1.0, 0.5 * lambda0);
  out.c_lambda = c_lambda(out.lambda);
  if (!(out.c_lambda > 0.0 && out.c_lambda < 1.0)) config_error("C_lambda outside (0, 1)");
  out.mu = out.c_lambda / (3.0 * m0);
  if (M2 > 0.0) out.mu = std::min(out.mu, lambda0 / (3.0 * M2));
  return out;
}

}  // namespace kantorovich
