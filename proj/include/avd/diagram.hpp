#pragma once

// Discrete anisotropic Voronoi diagrams on a dense cell grid: nearest-site
// labels at cell centres, face-connected components, orphan detection and
// neighbor-pair extraction.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "avd/metric.hpp"
#include "avd/sites.hpp"

namespace avd {

/// `resolution` cells per axis over a box.
struct CellGrid {
  Box box;
  int resolution = 0;

  CellGrid() = default;
  CellGrid(Box b, int res);

  int dimension() const { return box.dimension(); }
  std::size_t cell_count() const;
  Vec cell_size() const;
  double cell_diagonal() const { return cell_size().norm(); }
  std::array<int, 3> coords(std::size_t cell) const;
  std::size_t index(const std::array<int, 3>& c) const;
  Vec center(std::size_t cell) const;
  /// Cell containing p (clamped onto the grid).
  std::size_t cell_containing(const Vec& p) const;
};

struct GridLabeling {
  CellGrid grid;
  DistanceKind kind = DistanceKind::DW;
  std::size_t num_sites = 0;
  std::vector<std::int32_t> labels;
  std::vector<double> distances;  // empty for synthetic labelings
  std::size_t tie_count = 0;      // cells where the minimum was attained more than once
};

/// Each cell centre p gets argmin_v D(p, v), ties to the lowest site index.
GridLabeling label_grid(const MetricField& field, const SiteSet& sites, DistanceKind kind, int resolution);

/// Wraps an externally supplied label array (labels in [0, num_sites)).
GridLabeling make_labeling(const Box& box, int resolution, std::vector<std::int32_t> labels, std::size_t num_sites);

struct OrphanComponent {
  int site = 0;
  std::size_t cell_count = 0;
  std::size_t representative_cell = 0;  // lowest cell index in the component
};

struct OrphanReport {
  std::vector<int> component_count;      // per site
  std::vector<OrphanComponent> orphans;  // sorted by (site, representative)
  std::vector<int> displaced_sites;      // sites whose own cell carries another label
  std::vector<std::size_t> orphan_cells; // every cell of every orphan component, sorted
  bool orphan_free = true;
};

/// Face-connected components per label; a component is an orphan when it
/// does not contain the cell holding its site. Throws Resolution when two
/// sites fall into the same cell.
OrphanReport detect_orphans(const GridLabeling& labeling, const SiteSet& sites);

struct NeighborPair {
  int v = 0, w = 0;                        // v < w
  std::vector<std::size_t> witness_cells;  // cells on either side of a shared face, sorted
};

/// Site pairs whose regions share at least one grid face, sorted by (v, w).
std::vector<NeighborPair> neighbor_pairs(const GridLabeling& labeling);

struct NeighborBoundViolation {
  int v = 0, w = 0;
  std::size_t cell = 0;  // witness cell (DW) or the site index used as M_v (LS)
  double value = 0.0;
  double bound = 0.0;
  std::string side;  // "dw_lower", "ls_lower" or "ls_upper"
};

struct NeighborBoundReport {
  DistanceKind kind = DistanceKind::DW;
  double sigma = 0.0;
  double k = 1.0;            // LS only
  double lower_bound = 0.0;  // DW: P/(1+C sigma); LS: P/k
  double upper_bound = 0.0;  // LS: C(1+k)
  double slack = 0.0;        // cell diagonal * sampled max rho(M)
  std::size_t pairs_checked = 0;
  std::size_t checks = 0;
  std::size_t violation_count = 0;
  std::vector<NeighborBoundViolation> violations;  // at most 256 listed
};

/// DW: ||M_c (v - w)|| > P/(1+C sigma) - slack for every witness cell c.
/// LS: P/k <= ||M_v (v - w)|| <= C(1+k) + slack with k = (1+C sigma)/(1-C sigma),
/// checked with both sites of the pair as v. Throws Inapplicable for LS
/// when C sigma >= 1.
NeighborBoundReport check_neighbor_bounds(const GridLabeling& labeling, const SiteSet& sites,
                                          const MetricField& field, double cover, double packing, double sigma,
                                          DistanceKind kind);

}  // namespace avd
