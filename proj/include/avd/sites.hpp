#pragma once

// Site sets and their Delone constants: the asymmetric packing P and the
// grid-sampled cover C, under either distance.

#include <cstddef>
#include <vector>

#include "avd/metric.hpp"

namespace avd {

class SiteSet {
 public:
  /// Throws Argument on dimension mismatch or when two sites are closer than
  /// 1e-12 times the extent of the set.
  SiteSet(int dimension, std::vector<Vec> points);

  int dimension() const { return dim_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Vec& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Vec>& points() const { return points_; }

 private:
  int dim_;
  std::vector<Vec> points_;
};

/// min over unordered pairs {v, w} of max(D(v, w), D(w, v)): the largest P
/// for which the set is an asymmetric P-packing. Needs >= 2 sites.
double packing_constant(const SiteSet& sites, const MetricField& field, DistanceKind kind);

struct CoverEstimate {
  double value = 0.0;
  int resolution = 0;       // nodes per axis
  std::size_t samples = 0;  // total nodes visited
};

/// max over the nodes of a `resolution`^n lattice spanning the domain of
/// min_v D(p, v), point first and site second.
CoverEstimate cover_constant(const SiteSet& sites, const MetricField& field, DistanceKind kind, int resolution);

enum class DeloneClass { Net, Delone };

struct DeloneClassification {
  double ratio = 0.0;  // P / C
  DeloneClass kind = DeloneClass::Delone;
};

/// Net when P / C >= 1 (an asymmetric epsilon-net with epsilon = C).
DeloneClassification classify_delone(double cover, double packing);

const char* to_string(DeloneClass c);

/// Regular lattice of `per_axis` sites per axis at the cell centres of the
/// box subdivided `per_axis` times.
SiteSet lattice_sites(const Box& box, int per_axis);

/// Lattice sites displaced by up to `jitter` (fraction of the spacing) in
/// each coordinate, using a seeded generator.
SiteSet jittered_lattice_sites(const Box& box, int per_axis, double jitter, unsigned seed);

}  // namespace avd
