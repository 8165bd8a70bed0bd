#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kantorovich/scheme.hpp"

namespace kantorovich {

double sinc(double x);
// (1/2) sinc^2(x / 2)
double fejer(double x);
// Centered cardinal B-spline of order n, supported on [-n/2, n/2].
double bspline(int n, double x);

/// A nonnegative kernel profile L. Compact profiles vanish outside
/// [-support_bound, support_bound]; unbounded ones declare an envelope
/// L(x) <= decay_constant * |x|^{-decay_exponent} used for tail bounds.
struct KernelProfile {
  std::function<double(double)> eval;
  bool compact = true;
  double support_bound = 0.0;
  double decay_exponent = 0.0;
  double decay_constant = 0.0;
  std::string name;
  std::optional<int> order;   // B-spline order
  std::vector<double> knots;  // points where L is not smooth
  double default_radius = 0.0;

  double operator()(double x) const { return eval(x); }
  // Envelope bound on L(x) for |x| >= 1 (0 beyond the support when compact).
  double envelope(double x) const;
};

KernelProfile fejer_kernel(double radius = 1e4);
KernelProfile bspline_kernel(int n);
// Two-column text file `x L(x)` (whitespace or comma separated, '#' comments),
// linearly interpolated and zero outside the sampled extent.
KernelProfile table_kernel(const std::string& path);
KernelProfile scaled(const KernelProfile& kernel, double factor);

// `fejer`, `bspline(n)`, `table(path)`; relative table paths resolve against
// `base_dir`.
KernelProfile parse_kernel(std::string_view spec, const std::string& base_dir = ".");

struct KernelValidation {
  bool nonnegative = true;
  bool vanishes_outside_support = true;
  double l1_norm = 0.0;
  bool ok() const { return nonnegative && vanishes_outside_support && l1_norm > 0.0; }
};
KernelValidation validate_kernel(const KernelProfile& kernel);

struct MomentValue {
  double value = 0.0;
  bool infinite = false;
};

// M_nu(L) = int L(u) |u|^nu du. Unbounded kernels are integrated out to a
// radius R doubled from 64 until the tail-extrapolated value settles to
// 1e-6 relative; +inf when nu >= d - 1.
MomentValue continuous_moment(const KernelProfile& kernel, double nu);
// Same quadrature at a fixed truncation radius, with the envelope-fitted tail
// beyond R added.
MomentValue continuous_moment_at_radius(const KernelProfile& kernel, double nu, double radius);

// 257 equispaced probes over [0, 1] by default.
std::vector<double> unit_probe_grid(std::size_t n = 257);

struct DiscreteMoment {
  double value = 0.0;      // max over probes of the truncated series
  double tail_bound = 0.0;  // bound on the neglected terms
};

// max over probes u of sum_{|u - t_k| <= radius} L(u - t_k) |u - t_k|^beta.
// For non-uniform schemes the probe window is a lower bound of the true sup.
DiscreteMoment discrete_moment(const KernelProfile& kernel, const SamplingScheme& scheme,
                               double beta, std::span<const double> probes, double radius);

struct UnityCheck {
  double max_deviation = 0.0;
  double tail_bound = 0.0;
};
// max over probes of |sum_{|u - k| <= radius} L(u - k) - 1| for t_k = k.
UnityCheck check_partition_of_unity(const KernelProfile& kernel, std::span<const double> probes,
                                    double radius);

// Same defect on an arbitrary scheme: max over probes of
// |sum_{|u - t_k| <= radius} L(u - t_k) - 1| (compact kernels sum the whole
// support).
UnityCheck unity_defect(const KernelProfile& kernel, const SamplingScheme& scheme,
                        std::span<const double> probes, double radius);

// `per_unit` probes per unit length over [-half_width, half_width].
std::vector<double> window_probe_grid(double half_width, std::size_t per_unit = 257);

struct TailCondition {
  std::vector<std::pair<double, double>> values;  // (w, T(w))
  bool exact_zero = false;
  double alpha0_fit = 0.0;
  double M1_fit = 0.0;
};
// T(w) = int_{|u| > w^{1-alpha}} L(u) du per w, with a log-log fit over the
// positive values. M1 is inflated so M1 w^{-alpha0} dominates every sample.
TailCondition check_tail_condition(const KernelProfile& kernel, double alpha,
                                   std::span<const double> w_list);

struct MomentTable {
  double l1_norm = 0.0;
  double m0 = 0.0;
  std::map<double, DiscreteMoment> m_beta;
  std::map<double, MomentValue> M_nu;
};

}  // namespace kantorovich
