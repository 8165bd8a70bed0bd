#include <doctest.h>

#include <cmath>

#include "kantorovich/error.hpp"
#include "kantorovich/nonlin.hpp"

using namespace kantorovich;

TEST_CASE("families") {
  const auto id = identity_family();
  CHECK(id(3.0, 0.4) == 0.4);
  CHECK(id.is_identity);
  const auto g = power_family(0.1);
  CHECK(g(2.0, 0.0) == 0.0);
  CHECK(g(2.0, 0.25) == doctest::Approx(0.5));
  CHECK(g(2.0, 0.05) == 0.05);
  CHECK(g(2.0, 1.5) == 1.5);
  CHECK(g(2.0, -0.3) == -0.3);
  CHECK(g.psi(0.25) == doctest::Approx(0.5));
  CHECK(g.psi(4.0) == 4.0);
  CHECK(g.jump == 0.1);
  CHECK_THROWS_AS(power_family(0.5), Error);
  CHECK(parse_nonlinearity("power(0.2)").params.at(0) == 0.2);
  CHECK_THROWS_AS(parse_nonlinearity("cube"), Error);
}

TEST_CASE("Lipschitz majorant check") {
  const std::vector<double> ws{2, 4, 8, 16, 64, 256};
  const auto id = check_lipschitz(identity_family(), ws);
  CHECK(id.passed());
  CHECK(id.smallest_passing_w == 2.0);
  CHECK(id.samples >= 10000);
  const auto g = check_lipschitz(power_family(0.1), ws);
  CHECK_FALSE(g.passed());
  CHECK(g.violations_straddle_jump);
  CHECK_FALSE(g.smallest_passing_w.has_value());
  for (std::size_t v : g.violations_per_w) CHECK(v > 0);
  const auto again = check_lipschitz(power_family(0.1), ws);
  CHECK(again.violations == g.violations);
  CHECK(again.worst_ratio == g.worst_ratio);
}

TEST_CASE("deviation from the identity") {
  const auto g = power_family(0.1);
  const auto grid = default_u_grid(g);
  double last = 1.0;
  for (double w : {2.0, 8.0, 32.0, 200.0, 1000.0}) {
    const Deviation d = max_deviation(g, w, grid);
    const double u0 = std::pow((w - 1.0) / w, w);
    CAPTURE(w);
    CHECK(std::abs(d.argmax - u0) <= 1e-4);
    CHECK(d.value == doctest::Approx(u0 / (w - 1.0)).epsilon(1e-6));
    CHECK(d.value < last);
    last = d.value;
    if (w >= 200) CHECK(d.value < 1e-2);
  }
  CHECK(max_deviation(identity_family(), 5.0, grid).value == 0.0);
}

TEST_CASE("T_w products and rate certificates") {
  const auto g = power_family(0.1);
  const auto grid = default_u_grid(g);
  CHECK(t_w_product(g, 0.0, 2.0, grid) == doctest::Approx(std::sqrt(10.0) - 1.0).epsilon(1e-8));
  CHECK(t_w_product(identity_family(), 0.0, 2.0, grid) == 0.0);
  CHECK(t_w_product(identity_family(), 0.25, 2.0, grid) == doctest::Approx(0.25));
  const std::vector<double> with_zero{0.0, 0.5};
  CHECK_THROWS_AS(t_w_product(g, 0.0, 2.0, with_zero), Error);

  std::vector<std::pair<double, double>> s;
  for (double w : {4.0, 8.0, 16.0, 32.0, 64.0}) s.emplace_back(w, 3.0 / std::sqrt(w));
  const RateCertificate c = fit_rate_certificate(s);
  CHECK(c.theta0 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(c.M2 == doctest::Approx(3.0).epsilon(1e-10));
  for (auto& e : s) e.second = 0.0;
  CHECK(std::isinf(fit_rate_certificate(s).theta0));
  s[0].second = 1.0;
  CHECK_THROWS_AS(fit_rate_certificate(s), Error);
}
