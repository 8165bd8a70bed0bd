#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "kantorovich/config.hpp"
#include "kantorovich/metrics.hpp"
#include "kantorovich/operator.hpp"

namespace kantorovich {

/// One row of a convergence or modular run.
struct BoundRow {
  double w = 0.0;
  double error = 0.0;  // ||S_w f - f||_p, or I^phi[mu (S_w f - f)]
  double bound = 0.0;
  bool holds = false;
  double slack = 0.0;
  // Contributions of the bound's terms; tail_term is 0 for the L^p bound.
  double omega_small = 0.0;
  double omega_large = 0.0;
  double tail_term = 0.0;
  double third_term = 0.0;
  // Raw moduli entering the bound.
  double modulus_small = 0.0;
  double modulus_large = 0.0;
  bool quadrature_stable = true;
};

struct ExperimentReport {
  std::string kind;  // "convergence" or "modular"
  std::vector<BoundRow> rows;
  std::optional<RateFit> fit;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::pair<std::string, std::string>> labels;
  std::optional<bool> converging;  // modular runs
  std::optional<double> smallest_holding_w;
  std::string config_hash;
  std::string canonical_config;

  std::size_t violations() const;
  double constant(const std::string& name) const;
  std::string to_csv() const;
  std::string to_json() const;
};

ExperimentReport run_convergence(const ExperimentConfig& config, int threads = 1, std::ostream* log = nullptr);
ExperimentReport run_modular(const ExperimentConfig& config, int threads = 1, std::ostream* log = nullptr);

struct CertifyReport {
  double unity_defect = 0.0;
  double m0 = 0.0;
  std::optional<double> theta0;
  std::optional<double> M2;
  bool lipschitz_passed = false;
  std::string json;
};
CertifyReport run_certify(const ExperimentConfig& config, int threads = 1, std::ostream* log = nullptr);

struct ReconstructReport {
  Reconstruction reconstruction;
  std::vector<double> signal_values;
  std::string csv;
  std::string json;
};
ReconstructReport run_reconstruct(const ExperimentConfig& config, int threads = 1, std::ostream* log = nullptr);

// Writes to a temporary sibling and renames it into place.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace kantorovich
