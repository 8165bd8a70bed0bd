#pragma once

#include <vector>

#include "kantorovich/kernel.hpp"
#include "kantorovich/metrics.hpp"
#include "kantorovich/nonlin.hpp"
#include "kantorovich/scheme.hpp"
#include "kantorovich/signal.hpp"

namespace kantorovich {

/// Product kernel chi(x, u) = L(x) g_w(u) over a sampling scheme, with the
/// series cut at |w x - t_k| <= truncation_radius.
struct OperatorSpec {
  KernelProfile kernel;
  Nonlinearity nonlin;
  SamplingScheme scheme;
  double truncation_radius;
  double tail_budget = 1e-6;

  void validate() const;
};

/// S_w f for one signal and one w. The Kantorovich means are computed once
/// in the constructor (in parallel), after which evaluation is read-only.
class SamplingOperator {
 public:
  SamplingOperator(const OperatorSpec& spec, const Signal& f, double w, Interval domain, int threads = 1,
                   MeanOptions mean_options = {});

  double operator()(double x) const;

  double w() const { return w_; }
  // Bound on the neglected mass sum_{|w x - t_k| > R} L(w x - t_k) |g_w(mean_k)|.
  double tail_bound() const { return tail_bound_; }
  // Abscissae where S_w f may fail to be smooth: (t_k + knot) / w.
  std::vector<double> breakpoints() const;
  std::size_t active_terms() const { return nodes_.size(); }

 private:
  KernelProfile kernel_;
  double w_;
  double radius_;
  double tail_bound_ = 0.0;
  std::vector<long> indices_;   // ascending k with g_w(mean_k) != 0
  std::vector<double> nodes_;   // t_k
  std::vector<double> values_;  // g_w(mean_k)
};

struct Reconstruction {
  std::vector<double> grid;
  std::vector<double> values;
  double w = 0.0;
  double tail_bound_used = 0.0;
};

// n equispaced points over the domain (default 1025).
std::vector<double> uniform_grid(Interval domain, std::size_t n = 1025);

Reconstruction evaluate(const OperatorSpec& spec, const Signal& f, double w,
                        const std::vector<double>& grid, int threads = 1);
// evaluate with the nonlinearity replaced by the identity.
Reconstruction linear_evaluate(const OperatorSpec& spec, const Signal& f, double w,
                               const std::vector<double>& grid, int threads = 1);

// Interval outside of which S_w f vanishes (compact kernels) or is dominated
// by the tail (unbounded kernels, margin capped at 64 kernel units).
Interval reconstruction_domain(const OperatorSpec& spec, const Signal& f, double w);

// ||S_w f - f||_p over `domain`, split at the kinks of f and the
// breakpoints of S_w f.
NormResult reconstruction_error(const SamplingOperator& op, const Signal& f, double p, Interval domain,
                                NormOptions options = {.cells_per_piece = 4});

}  // namespace kantorovich
