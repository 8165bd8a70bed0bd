#pragma once

#include <functional>

#include "kantorovich/kernel.hpp"

namespace kantorovich {

struct ModularBoundInputs {
  double l1_norm = 0.0;
  double delta_lo = 0.0;
  double m0 = 0.0;
  double Delta = 0.0;
  double omega_eta_at_w_alpha = 0.0;  // omega(f, 1 / w^alpha)_eta
  double omega_eta_at_Delta_w = 0.0;  // omega(f, Delta / w)_eta
  double M1 = 0.0;
  double alpha0 = 0.0;
  double I_eta_lambda0_f = 0.0;
  double I_phi_lambda0_f = 0.0;
  double theta0 = 0.0;  // +inf drops the last term
  double w = 0.0;
  double alpha = 0.5;
  double mu = 0.0;
  double lambda0 = 1.0;
  bool compact_support = false;  // drops the tail term
};

struct ModularBound {
  double omega_small = 0.0;  // ||L||_1 / (3 delta m0) omega(f, w^-alpha)_eta
  double tail = 0.0;         // M1 I^eta[lambda0 f] / (3 delta m0) w^-alpha0
  double omega_large = 0.0;  // Delta / (3 delta) omega(f, Delta / w)_eta
  double third = 0.0;        // I^phi[lambda0 f] / 3 w^-theta0
  double total = 0.0;
};

ModularBound modular_bound_rhs(const ModularBoundInputs& in);

struct LpBoundInputs {
  double p = 1.0;
  double delta_lo = 0.0;
  double m0 = 0.0;
  double l1_norm = 0.0;
  MomentValue Mp;
  double Delta = 0.0;
  double omega_p_at_1_w = 0.0;
  double omega_p_at_Delta_w = 0.0;
  double M2 = 0.0;
  double theta0 = 0.0;  // +inf drops the last term
  double f_pnorm = 0.0;
  double w = 0.0;
};

struct LpBound {
  double omega_small = 0.0;
  double omega_large = 0.0;
  double third = 0.0;
  double total = 0.0;
};

LpBound lp_bound_rhs(const LpBoundInputs& in);

// lp_bound_rhs with omega_p(f, t) replaced by C1 t^alpha.
LpBound lip_rate_bound(double p, double alpha, double C1, LpBoundInputs constants, double w);

struct Comparison {
  bool holds = false;
  double slack = 0.0;  // bound / measured; +inf when measured is 0
};
Comparison compare(double measured, double bound);

/// Constants chosen as in the proof of the modular estimate:
/// lambda = min{1, lambda0 / 2} / 2 and
/// mu = min{C_lambda / (3 m0), lambda0 / (3 M2)}.
struct ProofConstants {
  double lambda0 = 1.0;
  double lambda = 0.0;
  double c_lambda = 0.0;
  double mu = 0.0;
};
ProofConstants proof_constants(double lambda0, double m0, double M2,
                               const std::function<double(double)>& c_lambda);

}  // namespace kantorovich
