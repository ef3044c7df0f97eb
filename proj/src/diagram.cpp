#include "avd/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "avd/error.hpp"
#include "parallel.hpp"

namespace avd {

CellGrid::CellGrid(Box b, int res) : box(std::move(b)), resolution(res) {
  if (resolution < 2) throw Error(ErrorCode::Argument, "grid resolution must be at least 2");
}

std::size_t CellGrid::cell_count() const {
  std::size_t n = 1;
  for (int k = 0; k < dimension(); ++k) n *= static_cast<std::size_t>(resolution);
  return n;
}

Vec CellGrid::cell_size() const { return (box.hi - box.lo) / static_cast<double>(resolution); }

std::array<int, 3> CellGrid::coords(std::size_t cell) const {
  std::array<int, 3> c{0, 0, 0};
  for (int k = 0; k < dimension(); ++k) {
    c[k] = static_cast<int>(cell % resolution);
    cell /= resolution;
  }
  return c;
}

std::size_t CellGrid::index(const std::array<int, 3>& c) const {
  std::size_t idx = 0;
  for (int k = dimension() - 1; k >= 0; --k) idx = idx * resolution + c[k];
  return idx;
}

Vec CellGrid::center(std::size_t cell) const {
  const auto c = coords(cell);
  Vec p(dimension());
  for (int k = 0; k < dimension(); ++k)
    p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * (c[k] + 0.5) / resolution;
  return p;
}

std::size_t CellGrid::cell_containing(const Vec& p) const {
  std::array<int, 3> c{0, 0, 0};
  for (int k = 0; k < dimension(); ++k) {
    const double t = (p[k] - box.lo[k]) / (box.hi[k] - box.lo[k]) * resolution;
    c[k] = std::clamp(static_cast<int>(std::floor(t)), 0, resolution - 1);
  }
  return index(c);
}

GridLabeling label_grid(const MetricField& field, const SiteSet& sites, DistanceKind kind, int resolution) {
  if (sites.empty()) throw Error(ErrorCode::Argument, "labeling needs at least one site");
  if (sites.dimension() != field.dimension())
    throw Error(ErrorCode::Argument, "site set and metric field differ in dimension");
  for (std::size_t i = 0; i < sites.size(); ++i) {
    try {
      field.require_in_domain(sites[i]);
    } catch (const Error& e) {
      throw Error(ErrorCode::Domain, "site " + std::to_string(i) + ": " + e.what());
    }
  }
  GridLabeling out;
  out.grid = CellGrid(field.domain(), resolution);
  out.kind = kind;
  out.num_sites = sites.size();
  const std::size_t cells = out.grid.cell_count();
  out.labels.assign(cells, 0);
  out.distances.assign(cells, 0.0);

  std::vector<Mat> site_m;
  if (kind == DistanceKind::DW)
    for (const Vec& v : sites.points()) site_m.push_back(field.sqrt_metric(v));

  std::vector<std::size_t> ties(cells, 0);
  detail::parallel_for(cells, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      const Vec p = out.grid.center(c);
      Mat m_p;
      if (kind == DistanceKind::LS) m_p = field.sqrt_metric(p);
      double best = std::numeric_limits<double>::infinity();
      std::int32_t label = 0;
      std::size_t tied = 0;
      for (std::size_t s = 0; s < sites.size(); ++s) {
        const double d = anisotropic_length(kind == DistanceKind::DW ? site_m[s] : m_p, p, sites[s]);
        if (d < best) {
          best = d;
          label = static_cast<std::int32_t>(s);
          tied = 0;
        } else if (d == best) {
          tied = 1;
        }
      }
      out.labels[c] = label;
      out.distances[c] = best;
      ties[c] = tied;
    }
  });
  out.tie_count = std::accumulate(ties.begin(), ties.end(), std::size_t{0});
  return out;
}

GridLabeling make_labeling(const Box& box, int resolution, std::vector<std::int32_t> labels, std::size_t num_sites) {
  GridLabeling out;
  out.grid = CellGrid(box, resolution);
  if (labels.size() != out.grid.cell_count())
    throw Error(ErrorCode::Argument, "label count does not match the grid size");
  for (std::int32_t l : labels)
    if (l < 0 || static_cast<std::size_t>(l) >= num_sites) throw Error(ErrorCode::Argument, "label out of range");
  out.labels = std::move(labels);
  out.num_sites = num_sites;
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // The smaller index becomes the root, so roots are component minima.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

template <typename Fn>
void for_each_face(const CellGrid& g, Fn&& fn) {
  const std::size_t cells = g.cell_count();
  std::size_t stride = 1;
  for (int k = 0; k < g.dimension(); ++k) {
    for (std::size_t c = 0; c < cells; ++c)
      if (g.coords(c)[k] + 1 < g.resolution) fn(c, c + stride);
    stride *= static_cast<std::size_t>(g.resolution);
  }
}

}  // namespace

OrphanReport detect_orphans(const GridLabeling& labeling, const SiteSet& sites) {
  if (sites.size() != labeling.num_sites)
    throw Error(ErrorCode::Argument, "labeling was computed for a different number of sites");
  const CellGrid& g = labeling.grid;
  const std::size_t cells = g.cell_count();

  std::vector<std::size_t> site_cell(sites.size());
  std::map<std::size_t, std::size_t> owner;
  for (std::size_t s = 0; s < sites.size(); ++s) {
    site_cell[s] = g.cell_containing(sites[s]);
    const auto [it, inserted] = owner.emplace(site_cell[s], s);
    if (!inserted)
      throw Error(ErrorCode::Resolution, "sites " + std::to_string(it->second) + " and " + std::to_string(s) +
                                             " fall into the same grid cell; increase the resolution");
  }

  DisjointSets ds(cells);
  for_each_face(g, [&](std::size_t a, std::size_t b) {
    if (labeling.labels[a] == labeling.labels[b]) ds.unite(a, b);
  });

  std::vector<std::size_t> comp_size(cells, 0);
  for (std::size_t c = 0; c < cells; ++c) ++comp_size[ds.find(c)];

  OrphanReport report;
  report.component_count.assign(sites.size(), 0);
  std::vector<char> orphan_root(cells, 0);
  for (std::size_t c = 0; c < cells; ++c) {
    if (ds.find(c) != c) continue;  // roots are component minima
    const int site = labeling.labels[c];
    ++report.component_count[site];
    const bool owns_site = labeling.labels[site_cell[site]] == site && ds.find(site_cell[site]) == c;
    if (!owns_site) {
      report.orphans.push_back({site, comp_size[c], c});
      orphan_root[c] = 1;
    }
  }
  for (std::size_t s = 0; s < sites.size(); ++s)
    if (labeling.labels[site_cell[s]] != static_cast<std::int32_t>(s)) report.displaced_sites.push_back(static_cast<int>(s));
  for (std::size_t c = 0; c < cells; ++c)
    if (orphan_root[ds.find(c)]) report.orphan_cells.push_back(c);
  std::sort(report.orphans.begin(), report.orphans.end(), [](const OrphanComponent& a, const OrphanComponent& b) {
    return a.site != b.site ? a.site < b.site : a.representative_cell < b.representative_cell;
  });
  report.orphan_free = report.orphans.empty() && report.displaced_sites.empty();
  return report;
}

std::vector<NeighborPair> neighbor_pairs(const GridLabeling& labeling) {
  std::map<std::pair<int, int>, std::vector<std::size_t>> found;
  for_each_face(labeling.grid, [&](std::size_t a, std::size_t b) {
    const int la = labeling.labels[a], lb = labeling.labels[b];
    if (la == lb) return;
    auto& w = found[{std::min(la, lb), std::max(la, lb)}];
    w.push_back(a);
    w.push_back(b);
  });
  std::vector<NeighborPair> out;
  out.reserve(found.size());
  for (auto& [key, cells] : found) {
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    out.push_back({key.first, key.second, std::move(cells)});
  }
  return out;
}

NeighborBoundReport check_neighbor_bounds(const GridLabeling& labeling, const SiteSet& sites,
                                          const MetricField& field, double cover, double packing, double sigma,
                                          DistanceKind kind) {
  if (!(cover > 0.0) || !(packing > 0.0) || !(sigma >= 0.0))
    throw Error(ErrorCode::Argument, "C and P must be positive and sigma non-negative");
  if (sites.size() != labeling.num_sites)
    throw Error(ErrorCode::Argument, "labeling was computed for a different number of sites");
  NeighborBoundReport r;
  r.kind = kind;
  r.sigma = sigma;
  const double x = cover * sigma;
  if (kind == DistanceKind::DW) {
    r.lower_bound = packing / (1.0 + x);
  } else {
    if (x >= 1.0) throw Error(ErrorCode::Inapplicable, "C * sigma >= 1: k is undefined for the LS bound");
    r.k = (1.0 + x) / (1.0 - x);
    r.lower_bound = packing / r.k;
    r.upper_bound = cover * (1.0 + r.k);
  }

  const auto pairs = neighbor_pairs(labeling);
  std::vector<Mat> site_m;
  double max_rho = 0.0;
  for (const Vec& v : sites.points()) {
    site_m.push_back(field.sqrt_metric(v));
    max_rho = std::max(max_rho, rho(site_m.back()));
  }
  std::map<std::size_t, Mat> cell_m;
  for (const auto& pr : pairs)
    for (std::size_t c : pr.witness_cells)
      if (!cell_m.count(c)) {
        Mat m = field.sqrt_metric(labeling.grid.center(c));
        max_rho = std::max(max_rho, rho(m));
        cell_m.emplace(c, std::move(m));
      }
  r.slack = labeling.grid.cell_diagonal() * max_rho;

  auto record = [&](int v, int w, std::size_t where, double value, double bound, const char* side) {
    ++r.violation_count;
    if (r.violations.size() < 256) r.violations.push_back({v, w, where, value, bound, side});
  };
  for (const auto& pr : pairs) {
    ++r.pairs_checked;
    const Vec& v = sites[pr.v];
    const Vec& w = sites[pr.w];
    if (kind == DistanceKind::DW) {
      for (std::size_t c : pr.witness_cells) {
        ++r.checks;
        const double value = anisotropic_length(cell_m.at(c), v, w);
        if (!(value > r.lower_bound - r.slack)) record(pr.v, pr.w, c, value, r.lower_bound, "dw_lower");
      }
    } else {
      for (int s : {pr.v, pr.w}) {
        ++r.checks;
        const double value = anisotropic_length(site_m[s], v, w);
        if (!(value >= r.lower_bound)) record(pr.v, pr.w, static_cast<std::size_t>(s), value, r.lower_bound, "ls_lower");
        if (!(value <= r.upper_bound + r.slack))
          record(pr.v, pr.w, static_cast<std::size_t>(s), value, r.upper_bound, "ls_upper");
      }
    }
  }
  return r;
}

}  // namespace avd
