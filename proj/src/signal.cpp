#include "kantorovich/signal.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"

namespace kantorovich {

Signal Signal::shifted(double t) const {
  Signal out = *this;
  out.eval = [f = eval, t](double x) { return f(x + t); };
  out.support = {support.lo - t, support.hi - t};
  for (double& k : out.kinks) k -= t;
  return out;
}

namespace signals {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) config_error(std::string(what) + " must be positive");
}

std::string fmt_args(double a, double b) {
  return "(" + format_real(a) + "," + format_real(b) + ")";
}

}  // namespace

Signal zero() {
  Signal s;
  s.eval = [](double) { return 0.0; };
  s.support = {0.0, 0.0};
  s.lip_alpha = [](double) { return 1.0; };
  s.name = "zero";
  return s;
}

Signal hat(double center, double half_width) {
  require_positive(half_width, "hat half-width");
  Signal s;
  s.eval = [center, half_width](double x) {
    return std::max(0.0, 1.0 - std::abs(x - center) / half_width);
  };
  s.support = {center - half_width, center + half_width};
  s.kinks = {center - half_width, center, center + half_width};
  s.lip_alpha = [](double) { return 1.0; };
  s.name = "hat" + fmt_args(center, half_width);
  return s;
}

Signal root_bump(double center, double half_width, int depth) {
  require_positive(half_width, "root_bump half-width");
  if (depth < 1 || depth > 24) config_error("root_bump depth must be in [1, 24]");
  const double lo = center - half_width;
  const double width = 2.0 * half_width;
  Signal s;
  s.eval = [lo, width, depth](double x) {
    const double u = (x - lo) / width;
    if (!(u > 0.0 && u < 1.0)) return 0.0;
    double acc = 0.0;
    double scale = 1.0;      // 2^j
    double amplitude = 1.0;  // 2^{-j/2}
    for (int j = 0; j <= depth; ++j) {
      const double y = scale * u;
      acc += amplitude * std::abs(y - std::nearbyint(y));
      scale *= 2.0;
      amplitude /= std::numbers::sqrt2;
    }
    return acc;
  };
  s.support = {lo, center + half_width};
  const long pieces = 1L << (depth + 1);
  s.kinks.reserve(static_cast<std::size_t>(pieces) + 1);
  for (long m = 0; m <= pieces; ++m)
    s.kinks.push_back(lo + width * static_cast<double>(m) / static_cast<double>(pieces));
  s.lip_alpha = [](double) { return 0.5; };
  s.name = "root_bump" + fmt_args(center, half_width);
  return s;
}

Signal sqrt_bump(double center, double half_width) {
  require_positive(half_width, "sqrt_bump half-width");
  Signal s;
  s.eval = [center, half_width](double x) {
    return std::sqrt(std::max(0.0, 1.0 - std::abs(x - center) / half_width));
  };
  s.support = {center - half_width, center + half_width};
  s.kinks = {center - half_width, center, center + half_width};
  // Split points graded toward the edges, where the derivative blows up.
  for (double d = half_width / 1.0625; d > 1e-12 * half_width; d /= 1.0625) {
    s.kinks.push_back(center - half_width + d);
    s.kinks.push_back(center + half_width - d);
  }
  std::sort(s.kinks.begin(), s.kinks.end());
  // Square root is 1/2-Hoelder, hence a member of Lip(1/2, p) for every p.
  s.lip_alpha = [](double) { return 0.5; };
  s.name = "sqrt_bump" + fmt_args(center, half_width);
  return s;
}

Signal gauss(double center, double sigma) {
  require_positive(sigma, "gauss sigma");
  Signal s;
  s.eval = [center, sigma](double x) {
    const double z = (x - center) / sigma;
    return std::exp(-0.5 * z * z);
  };
  s.support = {center - 10.0 * sigma, center + 10.0 * sigma};
  // No kinks; split every sigma / 16 so piecewise rules resolve the bell.
  for (int j = -160; j <= 160; ++j) s.kinks.push_back(center + sigma * j / 16.0);
  s.support_note = "truncated at 10 sigma; neglected mass below 2e-22";
  s.lip_alpha = [](double) { return 1.0; };
  s.name = "gauss" + fmt_args(center, sigma);
  return s;
}

Signal box(double a, double b) {
  if (!(b > a)) config_error("box requires a < b");
  Signal s;
  s.eval = [a, b](double x) { return (x >= a && x <= b) ? 1.0 : 0.0; };
  s.support = {a, b};
  s.kinks = {a, b};
  s.lip_alpha = [](double p) { return std::min(1.0, 1.0 / p); };
  s.name = "box" + fmt_args(a, b);
  return s;
}

}  // namespace signals

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

CallSpec parse_call(std::string_view spec) {
  spec = trim(spec);
  CallSpec out;
  const auto open = spec.find('(');
  if (open == std::string_view::npos) {
    if (spec.empty()) config_error("empty specification");
    out.name = std::string(spec);
    return out;
  }
  if (spec.back() != ')') config_error("unbalanced parentheses in '" + std::string(spec) + "'");
  out.name = std::string(trim(spec.substr(0, open)));
  std::string_view body = spec.substr(open + 1, spec.size() - open - 2);
  if (trim(body).empty()) return out;
  while (true) {
    const auto comma = body.find(',');
    out.args.emplace_back(trim(body.substr(0, comma)));
    if (out.args.back().empty()) config_error("empty argument in '" + std::string(spec) + "'");
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return out;
}

double parse_real(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    config_error("not a number: '" + std::string(text) + "'");
  return v;
}

int parse_int(std::string_view text) {
  text = trim(text);
  int v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    config_error("not an integer: '" + std::string(text) + "'");
  return v;
}

Signal parse_signal(std::string_view spec) {
  const CallSpec call = parse_call(spec);
  auto need = [&](std::size_t n) {
    if (call.args.size() != n)
      config_error("signal '" + call.name + "' expects " + std::to_string(n) + " arguments");
  };
  if (call.name == "zero") {
    need(0);
    return signals::zero();
  }
  if (call.name == "hat" || call.name == "root_bump" || call.name == "sqrt_bump" ||
      call.name == "gauss" || call.name == "box") {
    need(2);
    const double a = parse_real(call.args[0]);
    const double b = parse_real(call.args[1]);
    if (call.name == "hat") return signals::hat(a, b);
    if (call.name == "root_bump") return signals::root_bump(a, b);
    if (call.name == "sqrt_bump") return signals::sqrt_bump(a, b);
    if (call.name == "gauss") return signals::gauss(a, b);
    return signals::box(a, b);
  }
  config_error("unknown signal '" + call.name + "'");
}

}  // namespace kantorovich
