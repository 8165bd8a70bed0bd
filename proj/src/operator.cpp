#include "kantorovich/operator.hpp"

#include <algorithm>
#include <cmath>

#include "kantorovich/error.hpp"
#include "kantorovich/format.hpp"
#include "kantorovich/parallel.hpp"

namespace kantorovich {

void OperatorSpec::validate() const {
  if (!(truncation_radius > 0.0)) config_error("truncation radius must be positive");
  if (!(tail_budget > 0.0)) config_error("tail budget must be positive");
  if (kernel.compact && truncation_radius < kernel.support_bound)
    config_error("truncation radius " + format_real(truncation_radius) + " is below the kernel support bound " +
                 format_real(kernel.support_bound));
}

SamplingOperator::SamplingOperator(const OperatorSpec& spec, const Signal& f, double w, Interval domain,
                                   int threads, MeanOptions mean_options)
    : kernel_(spec.kernel), w_(w), radius_(spec.truncation_radius) {
  spec.validate();
  // Terms beyond a compact support are exact zeros; leave them out of the sums.
  if (kernel_.compact) radius_ = std::min(radius_, kernel_.support_bound);
  if (!(w > 0.0) || !std::isfinite(w)) config_error("w must be positive");
  const SamplingScheme& scheme = spec.scheme;
  const double gap = scheme.delta_hi();

  // Nodes that can carry a nonzero term anywhere on the domain.
  const double lo_need = std::max(w * domain.lo - radius_, w * f.support.lo) - gap;
  const double hi_need = std::min(w * domain.hi + radius_, w * f.support.hi) + gap;
  if (lo_need > hi_need || f.support.length() <= 0.0) return;
  if (scheme.node(scheme.min_index()) > lo_need || scheme.node(scheme.max_index()) < hi_need + gap)
    numeric_error("scheme window too small: need nodes covering [" + format_real(lo_need) + ", " +
                  format_real(hi_need + gap) + "], window is [" + std::to_string(scheme.min_index()) + ", " +
                  std::to_string(scheme.max_index()) + "]");

  std::vector<long> ks;
  for (long k = std::max(scheme.min_index(), scheme.first_index_at_or_above(lo_need) - 1);
       k < scheme.max_index() && scheme.node(k) <= hi_need; ++k)
    ks.push_back(k);

  std::vector<double> g(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    const double mean = kantorovich_mean(f, scheme, w, ks[i], mean_options);
    g[i] = spec.nonlin(w, mean);
  });

  double largest = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (!std::isfinite(g[i])) numeric_error("non-finite operator term at k = " + std::to_string(ks[i]));
    if (g[i] == 0.0) continue;
    indices_.push_back(ks[i]);
    nodes_.push_back(scheme.node(ks[i]));
    values_.push_back(g[i]);
    largest = std::max(largest, std::abs(g[i]));
  }
  if (!kernel_.compact) {
    // Neglected nodes sit at distance > R with gaps >= delta on both sides.
    const double d = kernel_.decay_exponent;
    tail_bound_ = largest * 2.0 * kernel_.decay_constant / (scheme.delta_lo() * (d - 1.0)) *
                  std::pow(std::max(radius_ - gap, 1.0), 1.0 - d);
  }
}

double SamplingOperator::operator()(double x) const {
  const double u = w_ * x;
  const auto first = std::lower_bound(nodes_.begin(), nodes_.end(), u - radius_);
  const auto last = std::upper_bound(first, nodes_.end(), u + radius_);
  const std::size_t begin = static_cast<std::size_t>(first - nodes_.begin());
  const std::size_t end = static_cast<std::size_t>(last - nodes_.begin());
  if (begin == end) return 0.0;
  std::vector<double> terms(end - begin);
  for (std::size_t i = begin; i < end; ++i) terms[i - begin] = kernel_(u - nodes_[i]) * values_[i];
  return pairwise_sum(terms);
}

std::vector<double> SamplingOperator::breakpoints() const {
  std::vector<double> out;
  out.reserve(nodes_.size() * kernel_.knots.size());
  for (double t : nodes_)
    for (double knot : kernel_.knots) out.push_back((t + knot) / w_);
  return out;
}

std::vector<double> uniform_grid(Interval domain, std::size_t n) {
  if (n < 2) config_error("grid needs at least two points");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i)
    g[i] = domain.lo + domain.length() * static_cast<double>(i) / static_cast<double>(n - 1);
  g.back() = domain.hi;
  return g;
}

Reconstruction evaluate(const OperatorSpec& spec, const Signal& f, double w, const std::vector<double>& grid,
                        int threads) {
  if (grid.empty()) config_error("evaluation grid is empty");
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  const SamplingOperator op(spec, f, w, {*lo, *hi}, threads);
  Reconstruction out;
  out.grid = grid;
  out.w = w;
  out.tail_bound_used = op.tail_bound();
  out.values.resize(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { out.values[i] = op(grid[i]); });
  for (double v : out.values)
    if (!std::isfinite(v)) numeric_error("non-finite reconstruction value");
  return out;
}

Reconstruction linear_evaluate(const OperatorSpec& spec, const Signal& f, double w,
                               const std::vector<double>& grid, int threads) {
  OperatorSpec linear = spec;
  linear.nonlin = identity_family();
  return evaluate(linear, f, w, grid, threads);
}

Interval reconstruction_domain(const OperatorSpec& spec, const Signal& f, double w) {
  const double reach = spec.kernel.compact ? spec.kernel.support_bound : std::min(spec.truncation_radius, 64.0);
  return f.support.inflated((reach + spec.scheme.delta_hi()) / w);
}

NormResult reconstruction_error(const SamplingOperator& op, const Signal& f, double p, Interval domain,
                                NormOptions options) {
  std::vector<double> breaks = op.breakpoints();
  breaks.insert(breaks.end(), f.kinks.begin(), f.kinks.end());
  return lp_norm([&](double x) { return op(x) - f(x); }, p, domain, breaks, options);
}

}  // namespace kantorovich
