#include <doctest.h>

#include <cmath>
#include <numeric>

#include "kantorovich/error.hpp"
#include "kantorovich/parallel.hpp"
#include "kantorovich/quadrature.hpp"

using namespace kantorovich;

TEST_CASE("pairwise sum depends only on the order of its input") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + static_cast<double>(i));
  const double a = pairwise_sum(v);
  const double b = pairwise_sum(v);
  CHECK(a == b);
  CHECK(a == doctest::Approx(std::accumulate(v.begin(), v.end(), 0.0)).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("simpson weights integrate cubics exactly") {
  for (std::size_t n : {2u, 3u, 4u, 5u, 8u, 33u}) {
    const double h = 1.0 / static_cast<double>(n - 1);
    const auto w = simpson_weights(n, h);
    double one = 0.0, cube = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = h * static_cast<double>(i);
      one += w[i];
      cube += w[i] * x * x * x;
    }
    CHECK(one == doctest::Approx(1.0).epsilon(1e-14));
    if (n > 2) CHECK(cube == doctest::Approx(0.25).epsilon(1e-13));
  }
  CHECK_THROWS_AS(simpson_weights(1, 1.0), Error);
}

TEST_CASE("piecewise integration handles kinks and jumps at breakpoints") {
  auto abs_fn = [](double x) { return std::abs(x); };
  const std::vector<double> at_zero{0.0};
  CHECK(integrate_piecewise(abs_fn, {-1.0, 2.0}, at_zero) == doctest::Approx(2.5).epsilon(1e-14));
  auto step = [](double x) { return x >= 0.3 ? 1.0 : 0.0; };
  const std::vector<double> at_jump{0.3};
  CHECK(integrate_piecewise(step, {0.0, 1.0}, at_jump) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(integrate_piecewise(abs_fn, {1.0, 1.0}, at_zero) == 0.0);
}

TEST_CASE("interior breakpoints are sorted, clipped and merged") {
  const std::vector<double> pts{0.5, -3.0, 0.25, 0.5 + 1e-15, 2.0, 1.0};
  const auto b = interior_breakpoints({0.0, 1.0}, pts);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == 0.25);
  CHECK(b[1] == 0.5);
}

TEST_CASE("adaptive simpson converges on a smooth integrand") {
  const auto r = adaptive_simpson([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
}

TEST_CASE("shift grid is odd, symmetric and contains the endpoints") {
  const auto g = shift_grid(0.1, 33);
  REQUIRE(g.size() == 33);
  CHECK(g.front() == -0.1);
  CHECK(g[16] == 0.0);
  CHECK(g.back() == 0.1);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == doctest::Approx(-g[g.size() - 1 - i]));
  CHECK(shift_grid(0.1, 1) == std::vector<double>{0.0});
  CHECK_THROWS_AS(shift_grid(0.1, 4), Error);
  CHECK_THROWS_AS(shift_grid(0.0, 33), Error);
}

TEST_CASE("parallel_for visits every index once and rethrows the lowest failure") {
  std::vector<int> hits(257, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  try {
    parallel_for(100, 4, [](std::size_t i) {
      if (i == 17 || i == 63) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}
