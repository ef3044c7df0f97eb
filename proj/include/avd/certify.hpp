#pragma once

// Orphan-freedom conditions for Du/Wang and Labelle/Shewchuk diagrams of
// (C, P)-Delone sets, their net-case thresholds, and the end-to-end
// certificate for a PL metric mesh plus a site set.

#include <memory>
#include <optional>
#include <string>

#include "avd/metric.hpp"
#include "avd/sites.hpp"

namespace avd {

/// (P/C)^2 / (2 (1 + C sigma)^2) - 2 (C sigma)^2 - 4 C sigma.
/// Positive means the DW diagram is orphan-free.
double dw_condition(double cover, double packing, double sigma);

/// ((P/C)^2 k^-2 - g^2 - 2g) / 2 - g^2 - 2g with k = (1 + C sigma)/(1 - C sigma)
/// and g = C sigma (1 + k). Empty when C sigma >= 1 (k undefined).
std::optional<double> ls_condition(double cover, double packing, double sigma);

std::optional<double> condition_value(DistanceKind kind, double cover, double packing, double sigma);

/// Same expressions fed with a worst-case variation bound sigma0.
std::optional<double> theorem_condition_sigma0(double cover, double packing, double sigma0, DistanceKind kind);

/// Root in x = C sigma of the condition with P = C, found by bisection on
/// (0, 0.5) for DW and (0, 0.4) for LS to an absolute tolerance of 1e-8.
double net_threshold(DistanceKind kind);

enum class Verdict { Certified, NotCertified, Inapplicable };
enum class SigmaProvenance { PlBound, UserSupplied };

const char* to_string(Verdict v);
const char* to_string(SigmaProvenance p);

struct Certificate {
  DistanceKind kind = DistanceKind::DW;
  double sigma1 = 0.0;
  SigmaProvenance sigma1_provenance = SigmaProvenance::PlBound;
  double cover = 0.0;
  int cover_resolution = 0;
  double packing = 0.0;
  double ratio = 0.0;
  std::optional<double> condition_value;
  Verdict verdict = Verdict::NotCertified;
  std::string reason;
};

/// Evaluates the condition for given constants. Certified only when the
/// condition value is strictly positive.
Certificate evaluate_certificate(DistanceKind kind, double sigma1, SigmaProvenance provenance, double cover,
                                 int cover_resolution, double packing);

/// sigma1_pl_bound -> cover_constant -> packing_constant -> condition.
/// `certified_sigma`, when given, replaces the PL bound and is recorded as
/// user supplied; it must itself be a certified upper bound. Component
/// errors are rethrown with the failing stage prefixed.
Certificate certify_pipeline(std::shared_ptr<const SimplicialMetricMesh> mesh, const SiteSet& sites,
                             DistanceKind kind, int resolution,
                             std::optional<double> certified_sigma = std::nullopt);

}  // namespace avd
