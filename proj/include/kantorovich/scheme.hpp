#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kantorovich/signal.hpp"

namespace kantorovich {

enum class SchemeKind { uniform, jittered };

/// Increasing node sequence t_k over an index window [-window, window],
/// with recorded gap bounds delta_lo <= t_{k+1} - t_k <= delta_hi.
/// Immutable after construction.
class SamplingScheme {
 public:
  static SamplingScheme uniform(long window);
  // t_k = k + j_k, j_k in [-amplitude, amplitude] drawn from a hash of
  // (seed, k); node values do not depend on the window size.
  static SamplingScheme jittered(long window, double amplitude, std::uint64_t seed);

  SchemeKind kind() const { return kind_; }
  double amplitude() const { return amplitude_; }
  std::uint64_t seed() const { return seed_; }
  double delta_lo() const { return delta_lo_; }
  double delta_hi() const { return delta_hi_; }
  long window() const { return window_; }

  long min_index() const { return -window_; }
  long max_index() const { return window_; }
  bool has_node(long k) const { return k >= -window_ && k <= window_; }
  // Cell k is [t_k, t_{k+1}]; needs both nodes stored.
  bool has_cell(long k) const { return k >= -window_ && k < window_; }

  double node(long k) const;
  double gap(long k) const { return node(k + 1) - node(k); }

  // Smallest stored index k with t_k >= x (max_index() + 1 if none).
  long first_index_at_or_above(double x) const;

  // Same kind and parameters with a different window.
  SamplingScheme with_window(long window) const;

  std::string describe() const;

 private:
  SamplingScheme() = default;

  SchemeKind kind_ = SchemeKind::uniform;
  double amplitude_ = 0.0;
  std::uint64_t seed_ = 0;
  long window_ = 0;
  double delta_lo_ = 1.0;
  double delta_hi_ = 1.0;
  std::vector<double> nodes_;  // nodes_[k + window_]
};

// `uniform` or `jitter(amplitude,seed)`, with the given index window.
SamplingScheme parse_scheme(std::string_view spec, long window);

struct MeanOptions {
  int subintervals = 8;  // Simpson panels per kink-free piece of the cell
  int max_subintervals = 4096;
  double rel_tol = 1e-9;
};

// (w / Delta_k) * integral of f over [t_k / w, t_{k+1} / w].
double kantorovich_mean(const Signal& f, const SamplingScheme& scheme, double w, long k,
                        MeanOptions options = {});

}  // namespace kantorovich
