#pragma once

// Text formats.
//
//   avdmesh <n> <num_vertices> <num_simplices>
//   v x y [z] m11 m12 [m13] m22 [m23] [m33]     upper triangle of M
//   s i j k [l]                                 0-based vertex indices
//
//   avdsites <n> <count>
//   x y [z]
//
// Parsing is strict: unknown record types, missing or extra tokens, count
// mismatches and non-SPD vertex matrices are Parse errors carrying
// "<source>:<line>:". Blank lines are ignored.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

#include "avd/metric.hpp"
#include "avd/sites.hpp"

namespace avd {

std::shared_ptr<SimplicialMetricMesh> parse_mesh(std::istream& in, const std::string& source = "<mesh>");
std::shared_ptr<SimplicialMetricMesh> load_mesh(const std::filesystem::path& path);
void write_mesh(std::ostream& out, const SimplicialMetricMesh& mesh);
void save_mesh(const std::filesystem::path& path, const SimplicialMetricMesh& mesh);

SiteSet parse_sites(std::istream& in, const std::string& source = "<sites>");
SiteSet load_sites(const std::filesystem::path& path);
void write_sites(std::ostream& out, const SiteSet& sites);
void save_sites(const std::filesystem::path& path, const SiteSet& sites);

}  // namespace avd
