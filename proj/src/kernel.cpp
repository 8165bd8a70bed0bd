#include "kantorovich/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"
#include "kantorovich/metrics.hpp"

namespace kantorovich {

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

double fejer(double x) {
  const double s = sinc(0.5 * x);
  return 0.5 * s * s;
}

double bspline(int n, double x) {
  if (n <= 0) config_error("bspline order must be >= 1");
  const double half = 0.5 * n;
  // Evaluate on the left half, where the truncated powers do not cancel.
  const double y = -std::abs(x);
  if (!(y > -half)) return 0.0;
  double factorial = 1.0;
  for (int i = 2; i <= n - 1; ++i) factorial *= i;
  double acc = 0.0;
  double binom = 1.0;
  for (int j = 0; j <= n; ++j) {
    const double t = half + y - j;
    if (t > 0.0) {
      const double term = n == 1 ? 1.0 : std::pow(t, n - 1);
      acc += (j % 2 == 0 ? 1.0 : -1.0) * binom * term;
    }
    binom = binom * (n - j) / (j + 1);
  }
  return std::max(0.0, acc / factorial);
}

double KernelProfile::envelope(double x) const {
  const double a = std::abs(x);
  if (compact) return a > support_bound ? 0.0 : std::numeric_limits<double>::infinity();
  return decay_constant * std::pow(a, -decay_exponent);
}

KernelProfile fejer_kernel(double radius) {
  KernelProfile k;
  k.eval = fejer;
  k.compact = false;
  k.decay_exponent = 2.0;
  // F(x) = 2 sin^2(pi x / 2) / (pi^2 x^2) <= (2 / pi^2) x^{-2}
  k.decay_constant = 2.0 / (std::numbers::pi * std::numbers::pi);
  k.name = "fejer";
  k.default_radius = radius;
  return k;
}

KernelProfile bspline_kernel(int n) {
  if (n <= 0) config_error("bspline order must be >= 1");
  KernelProfile k;
  k.eval = [n](double x) { return bspline(n, x); };
  k.compact = true;
  k.support_bound = 0.5 * n;
  k.name = "bspline(" + std::to_string(n) + ")";
  k.order = n;
  for (int j = 0; j <= n; ++j) k.knots.push_back(-0.5 * n + j);
  k.default_radius = 0.5 * n;
  return k;
}

KernelProfile table_kernel(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open kernel table '" + path + "'");
  std::vector<double> xs, ys;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra))
      config_error(path + ":" + std::to_string(line_no) + ": expected two columns");
    const double x = parse_real(a);
    const double y = parse_real(b);
    if (y < 0.0) config_error(path + ":" + std::to_string(line_no) + ": signed kernels are not supported");
    if (!xs.empty() && !(x > xs.back()))
      config_error(path + ":" + std::to_string(line_no) + ": abscissae must be strictly increasing");
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) config_error("kernel table '" + path + "' needs at least two rows");

  KernelProfile k;
  k.eval = [xs, ys](double x) {
    if (x < xs.front() || x > xs.back()) return 0.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ys.back();
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
  };
  k.compact = true;
  k.support_bound = std::max(std::abs(xs.front()), std::abs(xs.back()));
  k.name = "table(" + std::filesystem::path(path).filename().string() + ")";
  k.knots = xs;
  k.default_radius = k.support_bound;
  return k;
}

KernelProfile scaled(const KernelProfile& kernel, double factor) {
  if (!(factor > 0.0)) config_error("kernel scale factor must be positive");
  KernelProfile k = kernel;
  k.eval = [f = kernel.eval, factor](double x) { return factor * f(x); };
  k.decay_constant *= factor;
  k.name = format_real(factor) + "*" + kernel.name;
  return k;
}

KernelProfile parse_kernel(std::string_view spec, const std::string& base_dir) {
  const std::string text(spec);
  if (text.rfind("table(", 0) == 0 && text.size() > 7 && text.back() == ')') {
    std::filesystem::path path(text.substr(6, text.size() - 7));
    if (path.is_relative()) path = std::filesystem::path(base_dir) / path;
    return table_kernel(path.string());
  }
  const CallSpec call = parse_call(spec);
  if (call.name == "fejer" && call.args.empty()) return fejer_kernel();
  if (call.name == "bspline" && call.args.size() == 1) return bspline_kernel(parse_int(call.args[0]));
  config_error("unknown kernel '" + text + "'");
}

namespace {

// int_lo^hi L(u) |u|^nu du for lo < hi, split at integers, knots and 0.
double integrate_moment(const KernelProfile& kernel, double nu, double lo, double hi) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> edges{lo};
  for (double t = std::floor(lo) + 1.0; t < hi; t += 1.0) edges.push_back(t);
  for (double k : kernel.knots)
    if (k > lo && k < hi) edges.push_back(k);
  if (lo < 0.0 && hi > 0.0) edges.push_back(0.0);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  auto integrand = [&](double u) {
    const double l = kernel(u);
    if (nu == 0.0 || l == 0.0) return l;
    return l * std::pow(std::abs(u), nu);
  };
  std::vector<double> parts(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    parts[i] = adaptive_simpson(integrand, edges[i], edges[i + 1], 1e-15, 30).value;
  return pairwise_sum(parts);
}

// Mass of L |u|^nu beyond |u| = radius for an unbounded kernel, from the
// envelope shape u^{nu - d} fitted on [radius / 2, radius] of each side.
double extrapolated_tail(const KernelProfile& kernel, double nu, double radius) {
  const double e = nu - kernel.decay_exponent + 1.0;  // < 0
  const double shape = (std::pow(radius, e) - std::pow(0.5 * radius, e)) / e;
  const double beyond = -std::pow(radius, e) / e;
  const double right = integrate_moment(kernel, nu, 0.5 * radius, radius);
  const double left = integrate_moment(kernel, nu, -radius, -0.5 * radius);
  return (right + left) / shape * beyond;
}

}  // namespace

MomentValue continuous_moment_at_radius(const KernelProfile& kernel, double nu, double radius) {
  if (!(nu >= 0.0)) config_error("moment order must be nonnegative");
  if (kernel.compact) {
    const double b = kernel.support_bound;
    return {integrate_moment(kernel, nu, -b, b), false};
  }
  if (nu >= kernel.decay_exponent - 1.0) return {std::numeric_limits<double>::infinity(), true};
  if (!(radius >= 2.0)) config_error("moment truncation radius must be >= 2");
  const double core = integrate_moment(kernel, nu, -radius, radius);
  return {core + extrapolated_tail(kernel, nu, radius), false};
}

MomentValue continuous_moment(const KernelProfile& kernel, double nu) {
  if (kernel.compact || nu >= kernel.decay_exponent - 1.0)
    return continuous_moment_at_radius(kernel, nu, 64.0);
  double radius = 64.0;
  MomentValue prev = continuous_moment_at_radius(kernel, nu, radius);
  for (int i = 0; i < 12; ++i) {
    radius *= 2.0;
    const MomentValue cur = continuous_moment_at_radius(kernel, nu, radius);
    if (std::abs(cur.value - prev.value) <= 1e-6 * std::abs(cur.value)) return cur;
    prev = cur;
  }
  return prev;
}

std::vector<double> unit_probe_grid(std::size_t n) {
  if (n < 2) config_error("probe grid needs at least two points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

KernelValidation validate_kernel(const KernelProfile& kernel) {
  KernelValidation out;
  const double reach = kernel.compact ? kernel.support_bound + 10.0 : 100.0;
  constexpr int n = 20001;
  for (int i = 0; i < n; ++i) {
    const double x = -reach + 2.0 * reach * i / (n - 1);
    const double v = kernel(x);
    if (!(v >= 0.0)) out.nonnegative = false;
    if (kernel.compact && std::abs(x) > kernel.support_bound && v != 0.0) out.vanishes_outside_support = false;
  }
  const MomentValue l1 = continuous_moment(kernel, 0.0);
  out.l1_norm = l1.infinite ? std::numeric_limits<double>::infinity() : l1.value;
  if (!std::isfinite(out.l1_norm)) out.l1_norm = 0.0;
  return out;
}

DiscreteMoment discrete_moment(const KernelProfile& kernel, const SamplingScheme& scheme,
                               double beta, std::span<const double> probes, double radius) {
  if (!(beta >= 0.0)) config_error("discrete moment order must be nonnegative");
  if (probes.empty()) config_error("discrete moment needs probes");
  DiscreteMoment out;
  double reach = radius;
  if (kernel.compact) {
    // Every nonzero term lies within the support; the sum is exact.
    reach = kernel.support_bound;
  } else {
    if (!(radius > scheme.delta_hi())) config_error("discrete moment radius must exceed the gap bound");
    const double gap = kernel.decay_exponent - beta - 1.0;
    out.tail_bound = gap > 0.0 ? 2.0 * kernel.decay_constant / (scheme.delta_lo() * gap) *
                                     std::pow(radius - scheme.delta_hi(), -gap)
                               : std::numeric_limits<double>::infinity();
  }
  std::vector<double> terms;
  for (double u : probes) {
    if (scheme.node(scheme.min_index()) > u - reach || scheme.node(scheme.max_index()) < u + reach)
      numeric_error("scheme window too small: need nodes covering [" + format_real(u - reach) + ", " +
                    format_real(u + reach) + "]");
    terms.clear();
    for (long k = scheme.first_index_at_or_above(u - reach); k <= scheme.max_index(); ++k) {
      const double x = u - scheme.node(k);
      if (x < -reach) break;
      const double l = kernel(x);
      terms.push_back(beta == 0.0 ? l : l * std::pow(std::abs(x), beta));
    }
    out.value = std::max(out.value, pairwise_sum(terms));
  }
  if (out.tail_bound > 0.01 * out.value)
    numeric_error("insufficient truncation radius: tail bound " + format_real(out.tail_bound) +
                  " exceeds 1% of " + format_real(out.value));
  return out;
}

UnityCheck check_partition_of_unity(const KernelProfile& kernel, std::span<const double> probes,
                                    double radius) {
  if (!(radius >= 1.0)) config_error("partition-of-unity radius must be >= 1");
  UnityCheck out;
  if (!kernel.compact)
    out.tail_bound = 2.0 * kernel.decay_constant / (kernel.decay_exponent - 1.0) *
                     std::pow(radius - 1.0, 1.0 - kernel.decay_exponent);
  else if (radius < kernel.support_bound)
    out.tail_bound = std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  for (double u : probes) {
    terms.clear();
    const long lo = static_cast<long>(std::ceil(u - radius));
    const long hi = static_cast<long>(std::floor(u + radius));
    for (long k = lo; k <= hi; ++k) terms.push_back(kernel(u - static_cast<double>(k)));
    out.max_deviation = std::max(out.max_deviation, std::abs(pairwise_sum(terms) - 1.0));
  }
  return out;
}

UnityCheck unity_defect(const KernelProfile& kernel, const SamplingScheme& scheme,
                        std::span<const double> probes, double radius) {
  UnityCheck out;
  double reach = radius;
  if (kernel.compact) {
    reach = kernel.support_bound;
  } else {
    if (!(radius > scheme.delta_hi())) config_error("unity defect radius must exceed the gap bound");
    out.tail_bound = 2.0 * kernel.decay_constant / (scheme.delta_lo() * (kernel.decay_exponent - 1.0)) *
                     std::pow(radius - scheme.delta_hi(), 1.0 - kernel.decay_exponent);
  }
  std::vector<double> terms;
  for (double u : probes) {
    if (scheme.node(scheme.min_index()) > u - reach || scheme.node(scheme.max_index()) < u + reach)
      numeric_error("scheme window too small: need nodes covering [" + format_real(u - reach) + ", " +
                    format_real(u + reach) + "]");
    terms.clear();
    for (long k = scheme.first_index_at_or_above(u - reach); k <= scheme.max_index(); ++k) {
      const double x = u - scheme.node(k);
      if (x < -reach) break;
      terms.push_back(kernel(x));
    }
    out.max_deviation = std::max(out.max_deviation, std::abs(pairwise_sum(terms) - 1.0));
  }
  return out;
}

std::vector<double> window_probe_grid(double half_width, std::size_t per_unit) {
  if (!(half_width > 0.0) || per_unit < 2) config_error("probe window must be positive");
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width * static_cast<double>(per_unit - 1))) + 1;
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = -half_width + 2.0 * half_width * static_cast<double>(i) / static_cast<double>(n - 1);
  return g;
}

TailCondition check_tail_condition(const KernelProfile& kernel, double alpha,
                                   std::span<const double> w_list) {
  if (!(alpha > 0.0 && alpha < 1.0)) config_error("tail condition: alpha must be in (0, 1)");
  TailCondition out;
  std::vector<std::pair<double, double>> positive;
  for (double w : w_list) {
    if (!(w > 0.0)) config_error("tail condition: w must be positive");
    const double r = std::pow(w, 1.0 - alpha);
    double t = 0.0;
    if (kernel.compact) {
      const double b = kernel.support_bound;
      if (r < b) t = integrate_moment(kernel, 0.0, r, b) + integrate_moment(kernel, 0.0, -b, -r);
    } else {
      double radius = 64.0;
      while (radius < 8.0 * r) radius *= 2.0;
      t = integrate_moment(kernel, 0.0, r, radius) + integrate_moment(kernel, 0.0, -radius, -r) +
          extrapolated_tail(kernel, 0.0, radius);
    }
    out.values.emplace_back(w, t);
    if (t > 0.0) positive.emplace_back(w, t);
  }
  if (positive.empty()) {
    out.exact_zero = true;
    return out;
  }
  if (positive.size() >= 2) {
    const RateFit fit = loglog_fit(positive, 2);
    out.alpha0_fit = 0.0 - fit.slope;
  }
  for (const auto& [w, t] : positive) out.M1_fit = std::max(out.M1_fit, t * std::pow(w, out.alpha0_fit));
  return out;
}

}  // namespace kantorovich
