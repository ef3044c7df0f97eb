#include "avd/certify.hpp"

#include <cmath>
#include <sstream>

#include "avd/error.hpp"
#include "avd/variation.hpp"

namespace avd {

namespace {

void require_positive(double cover, double packing, double sigma) {
  if (!(cover > 0.0) || !(packing > 0.0)) throw Error(ErrorCode::Argument, "C and P must be positive");
  if (!(sigma >= 0.0)) throw Error(ErrorCode::Argument, "sigma must be non-negative");
}

template <typename T, typename Fn>
T staged(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), std::string("[") + stage + "] " + e.what());
  }
}

}  // namespace

double dw_condition(double cover, double packing, double sigma) {
  require_positive(cover, packing, sigma);
  const double x = cover * sigma;
  const double ratio = packing / cover;
  return ratio * ratio / (2.0 * (1.0 + x) * (1.0 + x)) - 2.0 * x * x - 4.0 * x;
}

std::optional<double> ls_condition(double cover, double packing, double sigma) {
  require_positive(cover, packing, sigma);
  const double x = cover * sigma;
  if (x >= 1.0) return std::nullopt;
  const double ratio = packing / cover;
  const double k = (1.0 + x) / (1.0 - x);
  const double g = x * (1.0 + k);
  return (ratio * ratio / (k * k) - g * g - 2.0 * g) / 2.0 - g * g - 2.0 * g;
}

std::optional<double> condition_value(DistanceKind kind, double cover, double packing, double sigma) {
  if (kind == DistanceKind::DW) return dw_condition(cover, packing, sigma);
  return ls_condition(cover, packing, sigma);
}

std::optional<double> theorem_condition_sigma0(double cover, double packing, double sigma0, DistanceKind kind) {
  return condition_value(kind, cover, packing, sigma0);
}

double net_threshold(DistanceKind kind) {
  // With C = 1 the argument sigma is x = C sigma itself.
  double lo = 0.0, hi = kind == DistanceKind::DW ? 0.5 : 0.4;
  auto f = [kind](double x) { return *condition_value(kind, 1.0, 1.0, x); };
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Certified:
      return "Certified";
    case Verdict::NotCertified:
      return "NotCertified";
    default:
      return "Inapplicable";
  }
}

const char* to_string(SigmaProvenance p) { return p == SigmaProvenance::PlBound ? "pl_bound" : "user_supplied"; }

Certificate evaluate_certificate(DistanceKind kind, double sigma1, SigmaProvenance provenance, double cover,
                                 int cover_resolution, double packing) {
  Certificate c;
  c.kind = kind;
  c.sigma1 = sigma1;
  c.sigma1_provenance = provenance;
  c.cover = cover;
  c.cover_resolution = cover_resolution;
  c.packing = packing;
  c.ratio = packing / cover;
  c.condition_value = condition_value(kind, cover, packing, sigma1);
  std::ostringstream os;
  os.precision(6);
  if (!c.condition_value) {
    c.verdict = Verdict::Inapplicable;
    os << "C*sigma1 = " << cover * sigma1 << " >= 1; the LS condition is undefined";
  } else if (*c.condition_value > 0.0) {
    c.verdict = Verdict::Certified;
    os << "condition value " << *c.condition_value << " > 0";
  } else {
    c.verdict = Verdict::NotCertified;
    os << "condition value " << *c.condition_value << " <= 0";
  }
  c.reason = os.str();
  return c;
}

Certificate certify_pipeline(std::shared_ptr<const SimplicialMetricMesh> mesh, const SiteSet& sites,
                             DistanceKind kind, int resolution, std::optional<double> certified_sigma) {
  if (!mesh) throw Error(ErrorCode::Argument, "[input] null mesh");
  if (sites.dimension() != mesh->dimension())
    throw Error(ErrorCode::Argument, "[input] mesh and sites differ in dimension");
  const MetricField field = MetricField::piecewise_linear(mesh);

  SigmaProvenance provenance = SigmaProvenance::PlBound;
  double sigma = 0.0;
  if (certified_sigma) {
    if (!(*certified_sigma >= 0.0) || !std::isfinite(*certified_sigma))
      throw Error(ErrorCode::Argument, "[sigma1] user-supplied sigma must be finite and non-negative");
    sigma = *certified_sigma;
    provenance = SigmaProvenance::UserSupplied;
  } else {
    sigma = staged<double>("sigma1", [&] { return sigma1_pl_bound(*mesh); });
  }
  const CoverEstimate cover =
      staged<CoverEstimate>("cover", [&] { return cover_constant(sites, field, kind, resolution); });
  const double packing = staged<double>("packing", [&] { return packing_constant(sites, field, kind); });
  if (!(cover.value > 0.0))
    throw Error(ErrorCode::Argument, "[cover] cover constant is zero; the resolution is too coarse to measure it");
  return evaluate_certificate(kind, sigma, provenance, cover.value, cover.resolution, packing);
}

}  // namespace avd
