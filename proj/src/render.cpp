#include "avd/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>
#include <vector>

#include "avd/error.hpp"

namespace avd {

namespace {

void require_2d(const GridLabeling& labeling) {
  if (labeling.grid.dimension() != 2)
    throw Error(ErrorCode::Argument, "image output needs a 2D diagram; use --format json for a report only");
}

// Grid-vertex coordinates (x, y) packed into one key.
using Corner = std::pair<int, int>;

// Closed boundary loops of the cell set selected by `inside`, each loop
// counter-clockwise around the set (holes clockwise).
std::vector<std::vector<Corner>> trace_loops(const CellGrid& g, const std::function<bool(int, int)>& inside) {
  const int n = g.resolution;
  std::multimap<Corner, Corner> edges;
  auto in = [&](int x, int y) { return x >= 0 && y >= 0 && x < n && y < n && inside(x, y); };
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      if (!inside(x, y)) continue;
      if (!in(x, y - 1)) edges.emplace(Corner{x, y}, Corner{x + 1, y});
      if (!in(x + 1, y)) edges.emplace(Corner{x + 1, y}, Corner{x + 1, y + 1});
      if (!in(x, y + 1)) edges.emplace(Corner{x + 1, y + 1}, Corner{x, y + 1});
      if (!in(x - 1, y)) edges.emplace(Corner{x, y + 1}, Corner{x, y});
    }
  std::vector<std::vector<Corner>> loops;
  while (!edges.empty()) {
    auto it = edges.begin();
    const Corner start = it->first;
    std::vector<Corner> loop{start};
    Corner at = it->second;
    edges.erase(it);
    while (at != start) {
      loop.push_back(at);
      auto next = edges.find(at);
      if (next == edges.end()) break;  // cannot happen for closed boundaries
      at = next->second;
      edges.erase(next);
    }
    // Drop collinear corners.
    std::vector<Corner> simplified;
    const std::size_t m = loop.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Corner& a = loop[(i + m - 1) % m];
      const Corner& b = loop[i];
      const Corner& c = loop[(i + 1) % m];
      const long cross = static_cast<long>(b.first - a.first) * (c.second - b.second) -
                         static_cast<long>(b.second - a.second) * (c.first - b.first);
      if (cross != 0) simplified.push_back(b);
    }
    loops.push_back(simplified.empty() ? loop : simplified);
  }
  return loops;
}

void write_path(std::ostream& out, const std::vector<std::vector<Corner>>& loops, int n, const char* fill) {
  if (loops.empty()) return;
  out << "<path fill=\"" << fill << "\" fill-rule=\"nonzero\" d=\"";
  for (const auto& loop : loops) {
    for (std::size_t i = 0; i < loop.size(); ++i)
      out << (i ? "L" : "M") << loop[i].first << " " << (n - loop[i].second);
    out << "Z";
  }
  out << "\"/>\n";
}

}  // namespace

std::array<std::uint8_t, 3> site_color(int site) {
  // Golden-ratio hue walk with alternating saturation/value bands.
  const double hue = std::fmod(0.11 + 0.6180339887498949 * site, 1.0) * 6.0;
  const double sat = 0.45 + 0.2 * (site % 3);
  const double val = 0.75 + 0.1 * (site % 2);
  const int sector = static_cast<int>(hue);
  const double f = hue - sector;
  const double p = val * (1 - sat), q = val * (1 - sat * f), t = val * (1 - sat * (1 - f));
  double r, g, b;
  switch (sector % 6) {
    case 0: r = val, g = t, b = p; break;
    case 1: r = q, g = val, b = p; break;
    case 2: r = p, g = val, b = t; break;
    case 3: r = p, g = q, b = val; break;
    case 4: r = t, g = p, b = val; break;
    default: r = val, g = p, b = q; break;
  }
  auto to_byte = [](double c) { return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); };
  return {to_byte(r), to_byte(g), to_byte(b)};
}

void write_ppm(std::ostream& out, const GridLabeling& labeling, const OrphanReport* orphans) {
  require_2d(labeling);
  const int n = labeling.grid.resolution;
  std::vector<char> black(labeling.labels.size(), 0);
  if (orphans)
    for (std::size_t c : orphans->orphan_cells) black[c] = 1;
  out << "P6\n" << n << " " << n << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(n) * 3);
  for (int yi = 0; yi < n; ++yi) {
    const int y = n - 1 - yi;
    for (int x = 0; x < n; ++x) {
      const std::size_t c = labeling.grid.index({x, y, 0});
      const auto rgb = black[c] ? std::array<std::uint8_t, 3>{0, 0, 0} : site_color(labeling.labels[c]);
      for (int k = 0; k < 3; ++k) row[static_cast<std::size_t>(x) * 3 + k] = static_cast<char>(rgb[k]);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void write_svg(std::ostream& out, const GridLabeling& labeling, const SiteSet& sites, const OrphanReport* orphans) {
  require_2d(labeling);
  const CellGrid& g = labeling.grid;
  const int n = g.resolution;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << n << " " << n << "\" width=\""
      << std::max(n, 512) << "\" height=\"" << std::max(n, 512) << "\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t s = 0; s < labeling.num_sites; ++s) {
    const auto loops = trace_loops(g, [&](int x, int y) {
      return labeling.labels[g.index({x, y, 0})] == static_cast<std::int32_t>(s);
    });
    const auto rgb = site_color(static_cast<int>(s));
    char fill[8];
    std::snprintf(fill, sizeof fill, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
    write_path(out, loops, n, fill);
  }
  if (orphans && !orphans->orphan_cells.empty()) {
    std::vector<char> black(labeling.labels.size(), 0);
    for (std::size_t c : orphans->orphan_cells) black[c] = 1;
    write_path(out, trace_loops(g, [&](int x, int y) { return black[g.index({x, y, 0})] != 0; }), n, "#000000");
  }
  const Vec extent = g.box.hi - g.box.lo;
  char buf[96];
  for (const Vec& p : sites.points()) {
    const double x = (p[0] - g.box.lo[0]) / extent[0] * n;
    const double y = n - (p[1] - g.box.lo[1]) / extent[1] * n;
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.6g\" cy=\"%.6g\" r=\"%.4g\"", x, y, std::max(0.4, n / 200.0));
    out << buf << " fill=\"#ffffff\" stroke=\"#000000\" stroke-width=\"" << std::max(0.1, n / 1000.0) << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace avd
