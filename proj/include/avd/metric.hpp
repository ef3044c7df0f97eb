#pragma once

// Metric fields stored through their square-root field M (Q = M^t M), the
// two asymmetric quadratic-form distances, and the simplicial PL carrier.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "avd/linalg.hpp"

namespace avd {

enum class DistanceKind { DW, LS };
enum class FieldKind { Analytic, PiecewiseLinear };
enum class Smoothness { C0, C1, PL };

const char* to_string(DistanceKind kind);
DistanceKind parse_distance_kind(std::string_view text);

/// Axis-aligned box; the domain of every metric field.
struct Box {
  Vec lo;
  Vec hi;

  int dimension() const { return static_cast<int>(lo.size()); }
  double diameter() const { return (hi - lo).norm(); }
  /// Inclusive containment, padded by `rel_tol` times the diameter.
  bool contains(const Vec& p, double rel_tol = 1e-12) const;
};

/// Simplicial complex carrying one SPD square-root matrix per vertex; M is
/// interpolated linearly (barycentrically) inside each simplex, so its
/// coordinate derivatives are constant per simplex and precomputed.
class SimplicialMetricMesh {
 public:
  SimplicialMetricMesh(int dimension, std::vector<Vec> vertices,
                       std::vector<std::array<int, 4>> simplices, std::vector<SpdMatrix> vertex_m);

  int dimension() const { return dim_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_simplices() const { return simplices_.size(); }
  const Box& bounds() const { return bounds_; }

  const Vec& vertex(std::size_t j) const { return vertices_[j]; }
  const SpdMatrix& vertex_m(std::size_t j) const { return vertex_m_[j]; }
  /// Vertex indices of simplex i (dimension + 1 entries).
  std::span<const int> simplex(std::size_t i) const {
    return {simplices_[i].data(), static_cast<std::size_t>(dim_ + 1)};
  }
  /// Constant derivative of M along coordinate k inside simplex i.
  const Mat& derivative(std::size_t i, int k) const { return derivs_[i * dim_ + k]; }

  /// Barycentric coordinates of p with respect to simplex i.
  std::array<double, 4> barycentric(std::size_t i, const Vec& p) const;
  /// Lowest-index simplex containing p (faces included, tolerance 1e-12).
  std::optional<std::size_t> locate(const Vec& p) const;
  /// Index of the simplex whose barycentric violation at p is smallest.
  std::size_t nearest_simplex(const Vec& p) const;

  /// Interpolated M at p; throws Domain when p lies outside the complex.
  /// Returns the stored vertex matrix bit-for-bit when p is a vertex.
  Mat interpolate(const Vec& p) const;
  /// Linear extension of simplex i's interpolant evaluated at p.
  Mat interpolate_in(std::size_t i, const Vec& p) const;

  /// Largest step along any unit direction from p that keeps all barycentric
  /// coordinates of simplex i non-negative.
  double interior_step(std::size_t i, const Vec& p) const;

 private:
  void build_locator();

  int dim_;
  std::vector<Vec> vertices_;
  std::vector<std::array<int, 4>> simplices_;
  std::vector<SpdMatrix> vertex_m_;
  std::vector<Mat> edge_inverse_;  // inverse of [v1-v0 ... vn-v0]
  std::vector<Mat> derivs_;
  Box bounds_;

  std::array<int, 3> buckets_per_axis_{};
  std::vector<std::vector<std::size_t>> buckets_;
};

/// SPD square-root matrix field over a bounding box, either given by a
/// closed-form evaluator or by a simplicial PL mesh.
class MetricField {
 public:
  using Evaluator = std::function<Mat(const Vec&)>;

  /// Throws NotSpd when the evaluator yields a non-SPD matrix on a probe set.
  static MetricField analytic(Box domain, Evaluator sqrt_metric, Smoothness smoothness = Smoothness::C1);
  static MetricField piecewise_linear(std::shared_ptr<const SimplicialMetricMesh> mesh);

  int dimension() const { return domain_.dimension(); }
  FieldKind kind() const { return kind_; }
  Smoothness smoothness() const { return smoothness_; }
  const Box& domain() const { return domain_; }
  const SimplicialMetricMesh* mesh() const { return mesh_.get(); }
  std::shared_ptr<const SimplicialMetricMesh> shared_mesh() const { return mesh_; }

  /// M_p. Analytic evaluators are not domain-checked (finite differences may
  /// step just outside the box); PL evaluation throws Domain off the complex.
  Mat sqrt_metric(const Vec& p) const;
  /// Q_p = M_p^t M_p.
  Mat metric(const Vec& p) const;

  /// Central-difference step for analytic fields: 1e-5 * diam(domain).
  double fd_step() const { return 1e-5 * domain_.diameter(); }

  /// Throws Domain when p is not inside the domain box (or the PL complex).
  void require_in_domain(const Vec& p) const;

 private:
  MetricField() = default;

  FieldKind kind_ = FieldKind::Analytic;
  Smoothness smoothness_ = Smoothness::C1;
  Box domain_;
  Evaluator eval_;
  std::shared_ptr<const SimplicialMetricMesh> mesh_;
};

/// ||M_at (a - b)||.
inline double anisotropic_length(const Mat& m_at, const Vec& a, const Vec& b) { return (m_at * (a - b)).norm(); }

/// Du/Wang distance: metric evaluated at the second argument, ||M_b (a - b)||.
double dw_distance(const MetricField& field, const Vec& a, const Vec& b);
/// Labelle/Shewchuk distance: metric evaluated at the first argument,
/// ||M_a (a - b)||. Identical to dw_distance(field, b, a).
double ls_distance(const MetricField& field, const Vec& a, const Vec& b);
double distance(const MetricField& field, DistanceKind kind, const Vec& a, const Vec& b);

/// Barycentric interpolation of the vertex matrices at p.
SpdMatrix interpolate_M(const SimplicialMetricMesh& mesh, const Vec& p);

/// D_r M at p. PL: sum_k r_k M_i^k of the simplex strictly containing p
/// (throws Domain on faces). Analytic: central difference with fd_step().
Mat directional_derivative_M(const MetricField& field, const Vec& p, const Vec& r);
/// PL directional derivative inside a given simplex.
Mat directional_derivative_in_simplex(const SimplicialMetricMesh& mesh, std::size_t simplex, const Vec& r);

}  // namespace avd
