#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>

#include "avd/diagram.hpp"

namespace avd {

/// Deterministic, never-black fill colour for a site.
std::array<std::uint8_t, 3> site_color(int site);

/// Binary PPM (P6), one pixel per cell, +y up. Cells of orphan components
/// (when a report is given) are drawn black. 2D only.
void write_ppm(std::ostream& out, const GridLabeling& labeling, const OrphanReport* orphans = nullptr);

/// SVG with one filled path per site region, traced from cell boundaries,
/// orphan cells overdrawn in black and sites marked. 2D only.
void write_svg(std::ostream& out, const GridLabeling& labeling, const SiteSet& sites,
               const OrphanReport* orphans = nullptr);

}  // namespace avd
