#pragma once

// Numerical property suite run by `avdcert verify`: the two-sided bounds on
// M_b M_a^-1 for nearby pairs, sampled sigma1 <= sigma0 and <= its bound,
// sigma0(C) dominance, and rho(A^-1) rho_min(A) = 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avd/metric.hpp"

namespace avd {

struct VerifyOptions {
  std::size_t num_pairs = 10000;
  std::vector<double> epsilons{0.05, 0.1};
  std::vector<double> covers{0.05, 0.1, 0.2};
  std::size_t sigma1_points = 2000;
  std::size_t sigma1_dirs = 32;
  std::size_t spd_samples = 1000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  double identity_tolerance = 1e-10;
};

struct PropertyResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;  // largest amount by which an inequality failed (0 if none)
  bool passed() const { return violations == 0; }
};

struct VerifyReport {
  double sigma1 = 0.0;  // value used by every sigma-dependent check
  bool sigma1_overridden = false;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool all_passed() const;
};

struct SandwichOutcome {
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst_excess = 0.0;
};

/// For metric-ball pairs of radius eps checks
/// 1 - eps s <= rho_min(M_b M_a^-1) <= ||M_b(a-b)||/||M_a(a-b)|| <= rho(M_b M_a^-1) <= 1 + eps s.
SandwichOutcome check_sandwich(const MetricField& field, double sigma1, double eps, std::size_t num_pairs,
                               std::uint64_t seed, double tolerance);

/// Runs every property. `sigma1` must be a certified bound for the field
/// (the PL bound for meshes); `override_sigma` replaces it for negative
/// control runs.
VerifyReport run_verification(const MetricField& field, double sigma1, const VerifyOptions& options,
                              std::optional<double> override_sigma = std::nullopt);

}  // namespace avd
