#include "avd/mesh_builders.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "avd/error.hpp"

namespace avd {

Box unit_box(int dimension) {
  Box b;
  b.lo = Vec::Zero(dimension);
  b.hi = Vec::Ones(dimension);
  return b;
}

std::shared_ptr<SimplicialMetricMesh> make_grid_mesh(const Box& box, int cells_per_axis,
                                                     const std::function<Mat(const Vec&)>& sqrt_metric) {
  const int n = box.dimension();
  if (n != 2 && n != 3) throw Error(ErrorCode::Argument, "grid meshes are 2D or 3D");
  if (cells_per_axis < 1) throw Error(ErrorCode::Argument, "cells_per_axis must be positive");
  const int nodes = cells_per_axis + 1;
  const int nz = n == 3 ? nodes : 1;
  auto node_index = [&](int x, int y, int z) { return (z * nodes + y) * nodes + x; };

  std::vector<Vec> vertices;
  std::vector<SpdMatrix> ms;
  for (int z = 0; z < nz; ++z)
    for (int y = 0; y < nodes; ++y)
      for (int x = 0; x < nodes; ++x) {
        Vec p(n);
        const std::array<int, 3> idx{x, y, z};
        for (int k = 0; k < n; ++k) {
          // Exact endpoints so the mesh bounding box equals `box`.
          p[k] = idx[k] == cells_per_axis ? box.hi[k]
                                          : box.lo[k] + (box.hi[k] - box.lo[k]) * idx[k] / cells_per_axis;
        }
        vertices.push_back(p);
        ms.emplace_back(sqrt_metric(p));
      }

  std::vector<std::array<int, 4>> simplices;
  if (n == 2) {
    for (int y = 0; y < cells_per_axis; ++y)
      for (int x = 0; x < cells_per_axis; ++x) {
        const int a = node_index(x, y, 0), b = node_index(x + 1, y, 0);
        const int c = node_index(x, y + 1, 0), d = node_index(x + 1, y + 1, 0);
        simplices.push_back({a, b, d, 0});
        simplices.push_back({a, d, c, 0});
      }
  } else {
    for (int z = 0; z < cells_per_axis; ++z)
      for (int y = 0; y < cells_per_axis; ++y)
        for (int x = 0; x < cells_per_axis; ++x) {
          std::array<int, 3> perm{0, 1, 2};
          do {
            std::array<int, 3> at{x, y, z};
            std::array<int, 4> tet{};
            tet[0] = node_index(at[0], at[1], at[2]);
            for (int s = 0; s < 3; ++s) {
              ++at[perm[s]];
              tet[s + 1] = node_index(at[0], at[1], at[2]);
            }
            simplices.push_back(tet);
          } while (std::next_permutation(perm.begin(), perm.end()));
        }
  }
  return std::make_shared<SimplicialMetricMesh>(n, std::move(vertices), std::move(simplices), std::move(ms));
}

std::shared_ptr<SimplicialMetricMesh> scale_mesh_metric(const SimplicialMetricMesh& mesh, double factor) {
  if (!(factor > 0.0)) throw Error(ErrorCode::Argument, "scale factor must be positive");
  std::vector<Vec> vertices;
  std::vector<SpdMatrix> ms;
  std::vector<std::array<int, 4>> simplices;
  for (std::size_t j = 0; j < mesh.num_vertices(); ++j) {
    vertices.push_back(mesh.vertex(j));
    ms.emplace_back(factor * mesh.vertex_m(j).matrix());
  }
  for (std::size_t i = 0; i < mesh.num_simplices(); ++i) {
    std::array<int, 4> s{};
    const auto src = mesh.simplex(i);
    std::copy(src.begin(), src.end(), s.begin());
    simplices.push_back(s);
  }
  return std::make_shared<SimplicialMetricMesh>(mesh.dimension(), std::move(vertices), std::move(simplices),
                                                std::move(ms));
}

}  // namespace avd
