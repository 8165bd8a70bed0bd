#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "kantorovich/error.hpp"
#include "kantorovich/metrics.hpp"
#include "kantorovich/phi.hpp"

using namespace kantorovich;

namespace {

std::vector<Signal> library() {
  return {signals::hat(0, 1), signals::hat(0.5, 0.25), signals::root_bump(0, 2, 10), signals::sqrt_bump(0, 1),
          signals::gauss(0, 0.5), signals::box(0, 1)};
}

}  // namespace

TEST_CASE("lp_norm examples") {
  const Signal box = signals::box(0, 1);
  CHECK(std::abs(lp_norm(box, signals::zero(), 2, {-1, 2}).value - 1.0) <= 1e-6);
  CHECK(lp_norm(box, box, 2, {-1, 2}).value == 0.0);
  const Signal hat = signals::hat(0, 1);
  auto scaled = [&](double c) { return [&, c](double x) { return c * hat(x); }; };
  const double base = lp_norm(scaled(1.0), 3.0, {-1, 1}, hat.kinks).value;
  for (double c : {-2.5, 0.1, 7.0})
    CHECK(lp_norm(scaled(c), 3.0, {-1, 1}, hat.kinks).value == doctest::Approx(std::abs(c) * base).epsilon(1e-10));
  // ||hat||_2^2 = 2/3
  const NormResult h2 = lp_norm(hat, signals::zero(), 2, hat.support);
  CHECK(h2.value == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(h2.stable);
  CHECK(h2.quadrature_cells > 0);
  CHECK_THROWS_AS(lp_norm(hat, signals::zero(), 0.5, hat.support), Error);
}

TEST_CASE("lp_norm on sampled differences") {
  const auto g = GridFunction::sample([](double x) { return x; }, {0, 1}, 1025);
  CHECK(lp_norm(g, 2).value == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
  CHECK(std::pow(lp_norm(g, 2).value, 2) == doctest::Approx(modular(phis::power(2), g, 1.0)).epsilon(1e-9));
}

TEST_CASE("omega_p examples against closed forms") {
  const Signal hat = signals::hat(0, 1);
  CHECK(omega_p(hat, 0.1, 1, hat.support, 1) == 0.0);
  // int |hat(x + h) - hat(x)| dx = 2h - h^2 / 2 at h = 0.1
  CHECK(std::abs(omega_p(hat, 0.1, 1, hat.support) - 0.195) <= 1e-4);
  // independent piecewise integration of the squared difference
  CHECK(omega_p(hat, 0.1, 2, hat.support) == doctest::Approx(0.137840487520902).epsilon(1e-9));
  const Signal box = signals::box(0, 1);
  CHECK(omega_p(box, 0.1, 1, box.support) == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(omega_p(box, 0.1, 2, box.support) == doctest::Approx(std::sqrt(0.2)).epsilon(1e-9));
  CHECK_THROWS_AS(omega_p(hat, 0.0, 1, hat.support), Error);
  CHECK_THROWS_AS(omega_p(hat, 0.1, 1, hat.support, 5), Error);
}

TEST_CASE("omega_p is monotone, subadditive in the step and below twice the norm") {
  const std::vector<double> lambdas{0.5, 1.5, 2.0, 3.0, 4.0};
  const std::vector<double> deltas{0.005, 0.01, 0.03, 0.07, 0.15};
  for (const Signal& f : library()) {
    for (double p : {1.0, 2.0}) {
      CAPTURE(f.name);
      CAPTURE(p);
      const double norm = lp_norm(f, signals::zero(), p, f.support).value;
      double last = 0.0;
      for (double d : deltas) {
        const double w = omega_p(f, d, p, f.support);
        CHECK(w >= last);
        CHECK(w <= 2.0 * norm * (1 + 1e-12));
        last = w;
        for (double l : lambdas) CHECK(omega_p(f, l * d, p, f.support) <= (1.0 + l) * w * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("Lipschitz certification") {
  const std::vector<double> ladder{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  const Signal hat = signals::hat(0, 1);
  const auto c1 = certify_lipschitz(hat, 1.0, 2.0, ladder);
  CHECK(c1.pass);
  CHECK(std::isfinite(c1.C1));
  // ||hat(. + d) - hat||_2 ~ sqrt(2) d for small d
  CHECK(c1.ratios.back() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-2));
  const auto half = certify_lipschitz(hat, 0.5, 2.0, ladder);
  CHECK(half.pass);
  CHECK(half.ratios.back() < half.ratios.front());
  const Signal box = signals::box(0, 1);
  CHECK(certify_lipschitz(box, 1.0, 1.0, ladder).pass);
  const auto fail = certify_lipschitz(box, 1.0, 2.0, ladder);
  CHECK_FALSE(fail.pass);
  // omega_2(box, d) = (2d)^{1/2}
  for (std::size_t i = 0; i < ladder.size(); ++i)
    CHECK(fail.ratios[i] == doctest::Approx(std::sqrt(2.0 * ladder[i]) / ladder[i]).epsilon(1e-8));
  const Signal rough = signals::root_bump(0, 2);
  const std::vector<double> long_ladder{1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4};
  CHECK(certify_lipschitz(rough, 0.5, 2.0, long_ladder).pass);
  CHECK_FALSE(certify_lipschitz(rough, 1.0, 2.0, long_ladder).pass);
  const std::vector<double> short_ladder{0.1, 0.05};
  CHECK_THROWS_AS(certify_lipschitz(hat, 1.0, 2.0, short_ladder), Error);
}

TEST_CASE("rate fits") {
  std::vector<std::pair<double, double>> a, b;
  for (double w : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    a.emplace_back(w, 5.0 / w);
    b.emplace_back(w, 2.0 / std::sqrt(w));
  }
  const RateFit fa = fit_rate(a);
  CHECK(std::abs(fa.slope + 1.0) <= 1e-9);
  CHECK(fa.r_squared == doctest::Approx(1.0));
  CHECK(std::abs(fit_rate(b).slope + 0.5) <= 1e-9);
  std::vector<std::pair<double, double>> shuffled = a;
  std::shuffle(shuffled.begin(), shuffled.end(), std::mt19937_64(9));
  const RateFit fs = fit_rate(shuffled);
  CHECK(fs.slope == fa.slope);
  CHECK(fs.intercept == fa.intercept);
  a[2].second = 0.0;
  CHECK_THROWS_AS(fit_rate(a), Error);
  a.resize(3);
  CHECK_THROWS_AS(fit_rate(a), Error);
}
