#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kantorovich/quadrature.hpp"

namespace kantorovich {

/// Experiment configuration, read from a sectioned `key = value` file:
///
///   [kernel]      name, truncation_radius, tail_budget
///   [nonlin]      name
///   [scheme]      name, window, probe_window
///   [signal]      name
///   [experiment]  p, w, alpha, domain, grid, lambda0, phi, eta, c_lambda,
///                 shift_count, seed, reconstruct_w, certify_beta,
///                 certify_nu, certify_w
///   [output]      csv, json
///
/// Unknown sections or keys are errors. Lists are comma separated.
struct ExperimentConfig {
  std::string base_dir = ".";  // for relative table paths

  std::string kernel = "bspline(2)";
  std::optional<double> truncation_radius;
  double tail_budget = 1e-6;

  std::string nonlin = "identity";

  std::string scheme = "uniform";
  std::optional<long> window;
  double probe_window = 4.0;  // half-width of the probe window for non-uniform schemes

  std::string signal = "hat(0,1)";

  double p = 1.0;
  std::vector<double> w = {5, 10, 20, 40, 80};
  double alpha = 0.5;
  std::optional<Interval> domain;
  std::size_t grid = 1025;
  double lambda0 = 1.0;
  std::string phi = "power(2)";
  std::string eta = "power(2)";
  std::string c_lambda = "power(1)";
  int shift_count = 33;
  std::uint64_t seed = 1;
  std::optional<double> reconstruct_w;
  std::vector<double> certify_beta = {0, 1};
  std::vector<double> certify_nu = {0, 0.5, 1};
  std::vector<double> certify_w = {8, 16, 32, 64, 128};

  std::string csv;   // output file names inside the output directory
  std::string json;  // (defaults derive from the verb)

  void validate() const;
};

ExperimentConfig parse_config_text(const std::string& text, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

// Resolved configuration (defaults included) in a fixed key order, one
// `section.key=value` per line. Equivalent files serialize identically.
std::string canonical_config(const ExperimentConfig& config);
// 64-bit FNV-1a of the canonical serialization, as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace kantorovich
