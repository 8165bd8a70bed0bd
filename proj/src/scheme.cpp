#include "kantorovich/scheme.hpp"

#include <algorithm>
#include <cmath>

#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"

namespace kantorovich {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic value in [-1, 1] for (seed, k).
double jitter_unit(std::uint64_t seed, long k) {
  const std::uint64_t h = splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k)));
  const double u = static_cast<double>(h >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * u - 1.0;
}

}  // namespace

SamplingScheme SamplingScheme::uniform(long window) {
  if (window < 1) config_error("scheme window must be >= 1");
  SamplingScheme s;
  s.kind_ = SchemeKind::uniform;
  s.window_ = window;
  s.nodes_.resize(static_cast<std::size_t>(2 * window + 1));
  for (long k = -window; k <= window; ++k) s.nodes_[k + window] = static_cast<double>(k);
  return s;
}

SamplingScheme SamplingScheme::jittered(long window, double amplitude, std::uint64_t seed) {
  if (window < 1) config_error("scheme window must be >= 1");
  if (!(amplitude >= 0.0 && amplitude < 0.4)) config_error("jitter amplitude must be in [0, 0.4)");
  SamplingScheme s;
  s.kind_ = SchemeKind::jittered;
  s.amplitude_ = amplitude;
  s.seed_ = seed;
  s.window_ = window;
  s.delta_lo_ = 1.0 - 2.0 * amplitude;
  s.delta_hi_ = 1.0 + 2.0 * amplitude;
  s.nodes_.resize(static_cast<std::size_t>(2 * window + 1));
  for (long k = -window; k <= window; ++k)
    s.nodes_[k + window] =
        static_cast<double>(k) + (amplitude == 0.0 ? 0.0 : amplitude * jitter_unit(seed, k));
  return s;
}

double SamplingScheme::node(long k) const {
  if (!has_node(k)) numeric_error("scheme window too small: node " + std::to_string(k) +
                                  " outside [" + std::to_string(-window_) + ", " +
                                  std::to_string(window_) + "]");
  return nodes_[static_cast<std::size_t>(k + window_)];
}

long SamplingScheme::first_index_at_or_above(double x) const {
  const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  return static_cast<long>(it - nodes_.begin()) - window_;
}

SamplingScheme SamplingScheme::with_window(long window) const {
  return kind_ == SchemeKind::uniform ? uniform(window) : jittered(window, amplitude_, seed_);
}

std::string SamplingScheme::describe() const {
  if (kind_ == SchemeKind::uniform) return "uniform";
  return "jitter(" + format_real(amplitude_) + "," + std::to_string(seed_) + ")";
}

SamplingScheme parse_scheme(std::string_view spec, long window) {
  const CallSpec call = parse_call(spec);
  if (call.name == "uniform" && call.args.empty()) return SamplingScheme::uniform(window);
  if (call.name == "jitter" && call.args.size() == 2) {
    const double amplitude = parse_real(call.args[0]);
    const long long seed = std::stoll(call.args[1]);
    if (seed < 0) config_error("jitter seed must be nonnegative");
    return SamplingScheme::jittered(window, amplitude, static_cast<std::uint64_t>(seed));
  }
  config_error("unknown scheme '" + std::string(spec) + "'");
}

double kantorovich_mean(const Signal& f, const SamplingScheme& scheme, double w, long k,
                        MeanOptions options) {
  if (!(w > 0.0)) config_error("kantorovich_mean: w must be positive");
  if (!scheme.has_cell(k)) numeric_error("scheme window too small: cell " + std::to_string(k));
  const double gap = scheme.gap(k);
  const Interval cell{scheme.node(k) / w, scheme.node(k + 1) / w};
  if (cell.hi <= f.support.lo || cell.lo >= f.support.hi) return 0.0;

  const std::vector<double> breaks = interior_breakpoints(cell, f.kinks);
  double previous = integrate_piecewise(f.eval, cell, breaks, {options.subintervals});
  for (int q = 2 * options.subintervals; q <= options.max_subintervals; q *= 2) {
    const double current = integrate_piecewise(f.eval, cell, breaks, {q});
    const double mean = w / gap * current;
    if (std::abs(current - previous) * w / gap <= options.rel_tol * (1.0 + std::abs(mean)))
      return mean;
    previous = current;
  }
  numeric_error("non-integrable cell " + std::to_string(k) + " at w = " + format_real(w));
}

}  // namespace kantorovich
