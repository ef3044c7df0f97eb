#include "avd/sites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "avd/error.hpp"
#include "parallel.hpp"

namespace avd {

SiteSet::SiteSet(int dimension, std::vector<Vec> points) : dim_(dimension), points_(std::move(points)) {
  if (dim_ != 2 && dim_ != 3) throw Error(ErrorCode::Argument, "site dimension must be 2 or 3");
  if (points_.empty()) return;
  Vec lo = points_[0], hi = points_[0];
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dim_)
      throw Error(ErrorCode::Argument, "site " + std::to_string(i) + " has the wrong dimension");
    if (!points_[i].allFinite()) throw Error(ErrorCode::Argument, "site " + std::to_string(i) + " is not finite");
    lo = lo.cwiseMin(points_[i]);
    hi = hi.cwiseMax(points_[i]);
  }
  const double tol = 1e-12 * std::max((hi - lo).norm(), std::max(lo.cwiseAbs().maxCoeff(), hi.cwiseAbs().maxCoeff()));
  // Sort by the first coordinate and only compare within the tolerance band.
  std::vector<std::size_t> order(points_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return points_[a][0] < points_[b][0]; });
  for (std::size_t a = 0; a < order.size(); ++a)
    for (std::size_t b = a + 1; b < order.size() && points_[order[b]][0] - points_[order[a]][0] <= tol; ++b)
      if ((points_[order[a]] - points_[order[b]]).norm() <= tol)
        throw Error(ErrorCode::Argument, "sites " + std::to_string(std::min(order[a], order[b])) + " and " +
                                             std::to_string(std::max(order[a], order[b])) + " coincide");
}

namespace {

void require_sites_in_domain(const SiteSet& sites, const MetricField& field) {
  if (sites.dimension() != field.dimension())
    throw Error(ErrorCode::Argument, "site set and metric field differ in dimension");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    try {
      field.require_in_domain(sites[i]);
    } catch (const Error& e) {
      throw Error(ErrorCode::Domain, "site " + std::to_string(i) + ": " + e.what());
    }
  }
}

}  // namespace

double packing_constant(const SiteSet& sites, const MetricField& field, DistanceKind) {
  if (sites.size() < 2) throw Error(ErrorCode::Argument, "packing needs at least two sites");
  require_sites_in_domain(sites, field);
  std::vector<Mat> m;
  m.reserve(sites.size());
  for (const Vec& v : sites.points()) m.push_back(field.sqrt_metric(v));
  // max(D(v,w), D(w,v)) = max(||M_v (v-w)||, ||M_w (v-w)||) for both kinds.
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sites.size(); ++i)
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      const double at_i = anisotropic_length(m[i], sites[i], sites[j]);
      const double at_j = anisotropic_length(m[j], sites[i], sites[j]);
      best = std::min(best, std::max(at_i, at_j));
    }
  return best;
}

CoverEstimate cover_constant(const SiteSet& sites, const MetricField& field, DistanceKind kind, int resolution) {
  if (sites.empty()) throw Error(ErrorCode::Argument, "cover needs at least one site");
  if (resolution < 2) throw Error(ErrorCode::Argument, "cover resolution must be at least 2");
  require_sites_in_domain(sites, field);
  const int n = field.dimension();
  const Box& box = field.domain();
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(resolution);

  std::vector<Mat> site_m;
  if (kind == DistanceKind::DW)
    for (const Vec& v : sites.points()) site_m.push_back(field.sqrt_metric(v));

  std::vector<double> partial(std::max<std::size_t>(1, (total + 1023) / 1024), 0.0);
  const std::size_t chunk = 1024;
  detail::parallel_for(partial.size(), [&](std::size_t cb, std::size_t ce) {
    for (std::size_t c = cb; c < ce; ++c) {
      double local = 0.0;
      for (std::size_t idx = c * chunk; idx < std::min(total, (c + 1) * chunk); ++idx) {
        Vec p(n);
        std::size_t rest = idx;
        for (int k = 0; k < n; ++k) {
          const std::size_t i = rest % resolution;
          rest /= resolution;
          p[k] = i + 1 == static_cast<std::size_t>(resolution)
                     ? box.hi[k]
                     : box.lo[k] + (box.hi[k] - box.lo[k]) * static_cast<double>(i) / (resolution - 1);
        }
        double nearest = std::numeric_limits<double>::infinity();
        if (kind == DistanceKind::DW) {
          for (std::size_t s = 0; s < sites.size(); ++s)
            nearest = std::min(nearest, anisotropic_length(site_m[s], p, sites[s]));
        } else {
          const Mat mp = field.sqrt_metric(p);
          for (std::size_t s = 0; s < sites.size(); ++s) nearest = std::min(nearest, anisotropic_length(mp, p, sites[s]));
        }
        local = std::max(local, nearest);
      }
      partial[c] = local;
    }
  });
  CoverEstimate est;
  est.value = *std::max_element(partial.begin(), partial.end());
  est.resolution = resolution;
  est.samples = total;
  return est;
}

DeloneClassification classify_delone(double cover, double packing) {
  if (!(cover > 0.0) || !(packing > 0.0))
    throw Error(ErrorCode::Argument, "cover and packing constants must be positive");
  DeloneClassification c;
  c.ratio = packing / cover;
  c.kind = c.ratio >= 1.0 ? DeloneClass::Net : DeloneClass::Delone;
  return c;
}

const char* to_string(DeloneClass c) { return c == DeloneClass::Net ? "net" : "delone"; }

SiteSet lattice_sites(const Box& box, int per_axis) { return jittered_lattice_sites(box, per_axis, 0.0, 0); }

SiteSet jittered_lattice_sites(const Box& box, int per_axis, double jitter, unsigned seed) {
  if (per_axis < 1) throw Error(ErrorCode::Argument, "per_axis must be positive");
  const int n = box.dimension();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::size_t total = 1;
  for (int k = 0; k < n; ++k) total *= static_cast<std::size_t>(per_axis);
  std::vector<Vec> pts;
  pts.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Vec p(n);
    std::size_t rest = idx;
    for (int k = 0; k < n; ++k) {
      const double spacing = (box.hi[k] - box.lo[k]) / per_axis;
      const double offset = jitter > 0.0 ? jitter * unit(rng) : 0.0;
      p[k] = box.lo[k] + spacing * (static_cast<double>(rest % per_axis) + 0.5 + offset);
      rest /= per_axis;
    }
    pts.push_back(p);
  }
  return SiteSet(n, std::move(pts));
}

}  // namespace avd
