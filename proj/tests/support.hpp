#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <vector>

#include "avd/diagram.hpp"
#include "avd/linalg.hpp"
#include "avd/mesh_builders.hpp"
#include "avd/metric.hpp"
#include "avd/sites.hpp"

namespace fixture {

using avd::Mat;
using avd::Vec;

inline Vec vec(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

inline Vec vec(double x, double y, double z) {
  Vec v(3);
  v << x, y, z;
  return v;
}

inline Mat scaled_identity(int n, double s) { return Mat::Identity(n, n) * s; }

inline Mat diag(double a, double b) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

/// Constant M on a cells x cells grid over the unit square (or cube).
inline std::shared_ptr<avd::SimplicialMetricMesh> constant_mesh(int cells, const Mat& m) {
  return avd::make_grid_mesh(avd::unit_box(static_cast<int>(m.rows())), cells, [m](const Vec&) { return m; });
}

/// M = (1 + slope x) I over the unit square.
inline std::shared_ptr<avd::SimplicialMetricMesh> linear_x_mesh(int cells, double slope = 1.0) {
  return avd::make_grid_mesh(avd::unit_box(2), cells,
                             [slope](const Vec& p) { return scaled_identity(2, 1.0 + slope * p[0]); });
}

/// Single triangle (0,0), (1,0), (0,1) with M = s (1 + x) I at the vertices.
inline std::shared_ptr<avd::SimplicialMetricMesh> hand_triangle(double s = 1.0) {
  std::vector<Vec> v{vec(0, 0), vec(1, 0), vec(0, 1)};
  std::vector<avd::SpdMatrix> m;
  for (const Vec& p : v) m.emplace_back(scaled_identity(2, s * (1.0 + p[0])));
  return std::make_shared<avd::SimplicialMetricMesh>(2, v, std::vector<std::array<int, 4>>{{0, 1, 2, 0}}, m);
}

inline avd::MetricField pl(std::shared_ptr<avd::SimplicialMetricMesh> mesh) {
  return avd::MetricField::piecewise_linear(std::move(mesh));
}

/// Analytic M = e^x I over the unit square.
inline avd::MetricField exp_field() {
  return avd::MetricField::analytic(avd::unit_box(2), [](const Vec& p) { return scaled_identity(2, std::exp(p[0])); });
}

/// B^t B + 0.1 I with B entries uniform in [-1, 1].
inline Mat random_spd(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Mat b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = u(rng);
  return b.transpose() * b + 0.1 * Mat::Identity(n, n);
}

inline Mat random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  return a;
}

/// M = V diag(sqrt(lambda)) V^t from an iterative eigensolver.
inline Eigen::MatrixXd eigen_sqrt(const Mat& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es{Eigen::MatrixXd(a)};
  return es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
}

/// Largest singular value by power iteration on A^t A.
inline double power_iteration_rho(const Mat& a, int iterations = 2000) {
  const Eigen::MatrixXd ata = Eigen::MatrixXd(a).transpose() * Eigen::MatrixXd(a);
  Eigen::VectorXd x = Eigen::VectorXd::Ones(a.cols());
  x(0) += 0.3;
  double lambda = 0.0;
  for (int i = 0; i < iterations; ++i) {
    Eigen::VectorXd y = ata * x;
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    lambda = x.dot(y) / x.squaredNorm();
    x = y / norm;
  }
  return std::sqrt(lambda);
}

/// Labels by direct evaluation of the public distance functions at every
/// cell centre; ties to the lowest index.
inline std::vector<std::int32_t> brute_force_labels(const avd::MetricField& field, const avd::SiteSet& sites,
                                                    avd::DistanceKind kind, int resolution) {
  const avd::CellGrid grid(field.domain(), resolution);
  std::vector<std::int32_t> labels(grid.cell_count());
  for (std::size_t c = 0; c < grid.cell_count(); ++c) {
    const Vec p = grid.center(c);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < sites.size(); ++s) {
      const double d = avd::distance(field, kind, p, sites[s]);
      if (d < best) {
        best = d;
        labels[c] = static_cast<std::int32_t>(s);
      }
    }
  }
  return labels;
}

/// Euclidean nearest-site labels computed from squared distances only.
inline std::vector<std::int32_t> euclidean_labels(const avd::Box& box, const std::vector<Vec>& sites, int resolution) {
  const int n = box.dimension();
  std::size_t cells = 1;
  for (int k = 0; k < n; ++k) cells *= resolution;
  std::vector<std::int32_t> labels(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    Vec p(n);
    std::size_t rest = c;
    for (int k = 0; k < n; ++k) {
      const double i = static_cast<double>(rest % resolution);
      rest /= resolution;
      p[k] = box.lo[k] + (box.hi[k] - box.lo[k]) * (i + 0.5) / resolution;
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < sites.size(); ++s) {
      double d2 = 0.0;
      for (int k = 0; k < n; ++k) d2 += (p[k] - sites[s][k]) * (p[k] - sites[s][k]);
      if (d2 < best) {
        best = d2;
        labels[c] = static_cast<std::int32_t>(s);
      }
    }
  }
  return labels;
}

/// Mild-variation mesh (1 + x/4) I on a 16x16 grid with a 10x10 lattice of
/// sites: a net (P/C > 1) with sigma1 C well below the DW threshold.
inline std::shared_ptr<avd::SimplicialMetricMesh> acceptance_mesh() { return linear_x_mesh(16, 0.25); }
inline avd::SiteSet acceptance_sites() { return avd::lattice_sites(avd::unit_box(2), 10); }
/// The acceptance lattice with a 4x4 block removed from the middle: the
/// packing radius is unchanged while the cover grows past the threshold.
inline avd::SiteSet thinned_sites() {
  const avd::SiteSet full = acceptance_sites();
  std::vector<Vec> kept;
  for (const Vec& p : full.points())
    if (!(p[0] > 0.3 && p[0] < 0.7 && p[1] > 0.3 && p[1] < 0.7)) kept.push_back(p);
  return avd::SiteSet(2, kept);
}

/// Hexagonal lattice fitted to the unit square: n columns, round(2n/sqrt 3)
/// rows, each point displaced by up to `jitter` spacings.
inline avd::SiteSet hex_sites(int n, double jitter, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double s = 1.0 / n;
  const int rows = static_cast<int>(std::lround(n * 2.0 / std::sqrt(3.0)));
  const double dy = 1.0 / rows;
  std::vector<Vec> pts;
  for (int j = 0; j < rows; ++j)
    for (int i = 0; i < n; ++i) {
      const double dx = jitter * s * u(rng), dyj = jitter * s * u(rng);
      pts.push_back(vec((i + 0.25 + 0.5 * (j % 2)) * s + dx, (j + 0.5) * dy + dyj));
    }
  return avd::SiteSet(2, pts);
}

inline Mat rotated_diag(double angle, double a, double b) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r * diag(a, b) * r.transpose();
}

struct NamedMesh {
  const char* name;
  std::shared_ptr<avd::SimplicialMetricMesh> mesh;
};

/// Mildly varying PL metrics on 16x16 grids over the unit square.
inline std::vector<NamedMesh> soundness_meshes() {
  const avd::Box box = avd::unit_box(2);
  return {
      {"linear_x", linear_x_mesh(16, 0.5)},
      {"anisotropic", avd::make_grid_mesh(box, 16, [](const Vec& p) { return diag(1 + 0.5 * p[0], 1 + 0.25 * p[1]); })},
      {"sheared", avd::make_grid_mesh(box, 16,
                                      [](const Vec& p) {
                                        Mat m = diag(1.5 + 0.2 * p[1], 1 + 0.2 * p[0]);
                                        m(0, 1) = m(1, 0) = 0.1 * p[0];
                                        return m;
                                      })},
      {"bump", avd::make_grid_mesh(box, 16,
                                   [](const Vec& p) {
                                     const double r2 = (p - vec(0.5, 0.5)).squaredNorm();
                                     return scaled_identity(2, 1 + 0.3 * std::exp(-r2 / 0.1));
                                   })},
      {"rotating", avd::make_grid_mesh(box, 16, [](const Vec& p) { return rotated_diag(0.6 * p[0] + 0.3 * p[1], 1.4, 1.0); })},
      {"linear_xy", avd::make_grid_mesh(box, 16, [](const Vec& p) { return scaled_identity(2, 1 + 0.4 * p[0] + 0.3 * p[1]); })},
  };
}

}  // namespace fixture
