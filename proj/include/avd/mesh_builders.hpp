#pragma once

#include <functional>
#include <memory>

#include "avd/metric.hpp"

namespace avd {

/// Structured simplicial mesh of `box` with `cells_per_axis` cells per axis:
/// each square is split into two triangles, each cube into six Kuhn
/// tetrahedra. Vertex matrices are `sqrt_metric` sampled at the vertices.
std::shared_ptr<SimplicialMetricMesh> make_grid_mesh(const Box& box, int cells_per_axis,
                                                     const std::function<Mat(const Vec&)>& sqrt_metric);

/// Copy of `mesh` with every vertex matrix multiplied by `factor` > 0.
std::shared_ptr<SimplicialMetricMesh> scale_mesh_metric(const SimplicialMetricMesh& mesh, double factor);

Box unit_box(int dimension);

}  // namespace avd
