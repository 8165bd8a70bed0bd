#include <doctest.h>

#include <cmath>
#include <limits>

#include "kantorovich/bounds.hpp"
#include "kantorovich/error.hpp"

using namespace kantorovich;

namespace {

ModularBoundInputs modular_example() {
  ModularBoundInputs in;
  in.l1_norm = 1;
  in.delta_lo = 1;
  in.m0 = 1;
  in.Delta = 1;
  in.omega_eta_at_w_alpha = 0.3;
  in.omega_eta_at_Delta_w = 0.6;
  in.M1 = 2;
  in.alpha0 = 0.5;
  in.I_eta_lambda0_f = 4;
  in.I_phi_lambda0_f = 9;
  in.theta0 = 1;
  in.w = 4;
  return in;
}

LpBoundInputs lp_example() {
  LpBoundInputs in;
  in.p = 2;
  in.delta_lo = 1;
  in.m0 = 1;
  in.l1_norm = 1;
  in.Mp = {1.0 / 6.0, false};
  in.Delta = 1;
  in.omega_p_at_1_w = 0.1;
  in.omega_p_at_Delta_w = 0.1;
  in.M2 = 0;
  in.theta0 = std::numeric_limits<double>::infinity();
  in.f_pnorm = 1;
  in.w = 10;
  return in;
}

}  // namespace

TEST_CASE("modular bound terms") {
  const ModularBound b = modular_bound_rhs(modular_example());
  CHECK(b.omega_small == doctest::Approx(0.1));
  CHECK(b.tail == doctest::Approx(4.0 / 3.0));
  CHECK(b.omega_large == doctest::Approx(0.2));
  CHECK(b.third == doctest::Approx(0.75));
  CHECK(b.total == doctest::Approx(0.1 + 4.0 / 3.0 + 0.2 + 0.75));

  ModularBoundInputs compact = modular_example();
  compact.compact_support = true;
  compact.theta0 = std::numeric_limits<double>::infinity();
  const ModularBound c = modular_bound_rhs(compact);
  CHECK(c.tail == 0.0);
  CHECK(c.third == 0.0);

  ModularBoundInputs bad = modular_example();
  bad.m0 = 0;
  CHECK_THROWS_AS(modular_bound_rhs(bad), Error);
  bad = modular_example();
  bad.alpha = 1.0;
  CHECK_THROWS_AS(modular_bound_rhs(bad), Error);
}

TEST_CASE("modular bound is monotone in its moduli and decays in w") {
  ModularBoundInputs in = modular_example();
  const double base = modular_bound_rhs(in).total;
  in.omega_eta_at_w_alpha *= 2;
  CHECK(modular_bound_rhs(in).total > base);
  in = modular_example();
  in.w = 16;
  CHECK(modular_bound_rhs(in).total < base);
}

TEST_CASE("Lp bound terms") {
  const LpBound b = lp_bound_rhs(lp_example());
  // 2^{1/2} (7/6)^{1/2} 0.1
  CHECK(b.omega_small == doctest::Approx(std::sqrt(2.0 * 7.0 / 6.0) * 0.1));
  CHECK(b.omega_large == doctest::Approx(0.1));
  CHECK(b.third == 0.0);
  LpBoundInputs in = lp_example();
  in.p = 1;
  in.Mp = {1.0 / 3.0, false};
  const LpBound one = lp_bound_rhs(in);
  CHECK(one.omega_small == doctest::Approx(4.0 / 3.0 * 0.1));
  in.M2 = 2;
  in.theta0 = 1;
  CHECK(lp_bound_rhs(in).third == doctest::Approx(0.2));
  in.Mp = {0, true};
  CHECK_THROWS_WITH_AS(lp_bound_rhs(in), doctest::Contains("moment condition violated"), Error);
}

TEST_CASE("Lip(alpha, p) rate bound") {
  const LpBound a = lip_rate_bound(2, 1.0, 3.0, lp_example(), 10);
  const LpBound b = lip_rate_bound(2, 1.0, 3.0, lp_example(), 20);
  CHECK(b.total == doctest::Approx(a.total / 2));
  const LpBound h = lip_rate_bound(2, 0.5, 3.0, lp_example(), 40);
  CHECK(h.total == doctest::Approx(lip_rate_bound(2, 0.5, 3.0, lp_example(), 10).total / 2));
}

TEST_CASE("comparison and proof constants") {
  CHECK(compare(1.0, 2.0).holds);
  CHECK(compare(1.0, 2.0).slack == 2.0);
  CHECK_FALSE(compare(2.0, 1.0).holds);
  CHECK(std::isinf(compare(0.0, 1.0).slack));
  const ProofConstants c = proof_constants(1.0, 1.0, 3.0, [](double l) { return l; });
  CHECK(c.lambda == 0.25);
  CHECK(c.c_lambda == 0.25);
  CHECK(c.mu == doctest::Approx(1.0 / 12.0));
  const ProofConstants d = proof_constants(1.0, 1.0, 30.0, [](double l) { return l; });
  CHECK(d.mu == doctest::Approx(1.0 / 90.0));
  CHECK(proof_constants(4.0, 1.0, 0.0, [](double l) { return l; }).lambda == 0.5);
  CHECK_THROWS_AS(proof_constants(1.0, 1.0, 1.0, [](double) { return 2.0; }), Error);
}
