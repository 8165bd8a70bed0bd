#include <doctest.h>

#include <cmath>

#include "kantorovich/error.hpp"
#include "kantorovich/scheme.hpp"

using namespace kantorovich;

TEST_CASE("uniform scheme") {
  const auto s = SamplingScheme::uniform(10);
  CHECK(s.node(0) == 0.0);
  CHECK(s.node(5) == 5.0);
  CHECK(s.delta_lo() == 1.0);
  CHECK(s.delta_hi() == 1.0);
  for (long k = s.min_index(); k < s.max_index(); ++k) CHECK(s.gap(k) == 1.0);
  CHECK_THROWS_WITH_AS(s.node(11), doctest::Contains("scheme window too small"), Error);
  CHECK_THROWS_AS(SamplingScheme::uniform(0), Error);
}

TEST_CASE("jittered scheme") {
  const auto zero = SamplingScheme::jittered(50, 0.0, 4);
  const auto uni = SamplingScheme::uniform(50);
  for (long k = -50; k <= 50; ++k) CHECK(zero.node(k) == uni.node(k));

  const auto s = SamplingScheme::jittered(200, 0.25, 11);
  CHECK(s.delta_lo() == 0.5);
  CHECK(s.delta_hi() == 1.5);
  for (long k = s.min_index(); k < s.max_index(); ++k) {
    CHECK(s.gap(k) >= 0.5);
    CHECK(s.gap(k) <= 1.5);
  }
  const auto again = SamplingScheme::jittered(200, 0.25, 11);
  const auto wider = SamplingScheme::jittered(300, 0.25, 11);
  const auto other = SamplingScheme::jittered(200, 0.25, 12);
  bool differs = false;
  for (long k = -200; k <= 200; ++k) {
    CHECK(again.node(k) == s.node(k));
    CHECK(wider.node(k) == s.node(k));
    differs |= other.node(k) != s.node(k);
  }
  CHECK(differs);
  CHECK_THROWS_AS(SamplingScheme::jittered(10, 0.4, 1), Error);
  CHECK(parse_scheme("jitter(0.25,11)", 200).node(7) == s.node(7));
  CHECK(parse_scheme("uniform", 3).describe() == "uniform");
  CHECK_THROWS_AS(parse_scheme("random", 3), Error);
}

TEST_CASE("index lookup") {
  const auto s = SamplingScheme::uniform(10);
  CHECK(s.first_index_at_or_above(2.5) == 3);
  CHECK(s.first_index_at_or_above(-20) == -10);
  CHECK(s.first_index_at_or_above(20) == 11);
}

TEST_CASE("kantorovich means against analytic cell averages") {
  const auto uni = SamplingScheme::uniform(100);
  const Signal c{[](double) { return 2.75; }, {-1e3, 1e3}, {}, {}, "const", ""};
  CHECK(kantorovich_mean(c, uni, 3.0, 4) == doctest::Approx(2.75).epsilon(1e-14));
  const Signal id{[](double x) { return x; }, {-1e3, 1e3}, {}, {}, "identity", ""};
  CHECK(std::abs(kantorovich_mean(id, uni, 4.0, 2) - 0.625) <= 1e-9);
  const auto jit = SamplingScheme::jittered(100, 0.3, 5);
  for (long k : {-7L, 0L, 13L}) {
    const double a = jit.node(k) / 2.5, b = jit.node(k + 1) / 2.5;
    CHECK(std::abs(kantorovich_mean(id, jit, 2.5, k) - 0.5 * (a + b)) <= 1e-9);
    CHECK(std::abs(kantorovich_mean(c, jit, 2.5, k) - 2.75) <= 1e-9);
  }
  CHECK(std::abs(kantorovich_mean(signals::box(0, 1), uni, 1.0, 0) - 1.0) <= 1e-9);
  CHECK(kantorovich_mean(signals::box(0, 1), uni, 1.0, 5) == 0.0);
  // half of the cell [0.5, 1] at w = 2 sits inside the hat's falling edge
  CHECK(kantorovich_mean(signals::hat(0, 1), uni, 2.0, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(kantorovich_mean(c, uni, 0.0, 1), Error);
  CHECK_THROWS_WITH_AS(kantorovich_mean(c, uni, 1.0, 100), doctest::Contains("scheme window too small"), Error);
}

TEST_CASE("non-integrable cells are reported") {
  const auto uni = SamplingScheme::uniform(10);
  const Signal wild{[](double x) { return std::sin(1.0 / (x * x + 1e-14)); }, {-1, 1}, {}, {}, "wild", ""};
  CHECK_THROWS_WITH_AS(kantorovich_mean(wild, uni, 1.0, 0, {8, 64, 1e-12}), doctest::Contains("non-integrable cell 0"),
                       Error);
}

TEST_CASE("means are translation consistent, monotone and bounded by the signal") {
  const auto uni = SamplingScheme::uniform(200);
  const Signal hat = signals::hat(0.3, 1);
  const double w = 8.0;
  for (long k = -12; k <= 12; ++k) {
    // moving f by one cell of width 1/w shifts the cell index by one
    CHECK(kantorovich_mean(hat.shifted(-1.0 / w), uni, w, k + 1) ==
          doctest::Approx(kantorovich_mean(hat, uni, w, k)).epsilon(1e-10));
    const Signal bigger{[&](double x) { return hat(x) + 0.1 * std::exp(-x * x); }, {-50, 50}, hat.kinks, {}, "", ""};
    CHECK(kantorovich_mean(hat, uni, w, k) <= kantorovich_mean(bigger, uni, w, k) + 1e-12);
    const double m = kantorovich_mean(hat, uni, w, k);
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i <= 400; ++i) {
      const double v = hat(uni.node(k) / w + i / 400.0 / w);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    CHECK(m >= lo - 1e-12);
    CHECK(m <= hi + 1e-12);
  }
}
