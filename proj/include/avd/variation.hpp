#pragma once

// Metric-variation constants. sigma1_pl_bound is the certified, linear-time
// upper bound on the differentiable variation of a PL field; the *_sampled
// functions are seeded empirical suprema (lower bounds of the true values)
// meant for validation only, never for certification.

#include <cstdint>
#include <utility>
#include <vector>

#include "avd/metric.hpp"

namespace avd {

/// max over simplices of sqrt(sum_k rho(M_i^k)^2) / min_{vertices} lambda_1^2,
/// lambda_1 the smallest eigenvalue of the vertex matrix. O(#simplices).
/// Throws Degenerate when some vertex has lambda_1 <= 1e-12.
double sigma1_pl_bound(const SimplicialMetricMesh& mesh);

/// Per-simplex term of sigma1_pl_bound.
double sigma1_pl_term(const SimplicialMetricMesh& mesh, std::size_t simplex);

/// rho(D_r M_p M_p^-1) / ||M_p r|| for an explicit derivative.
double differential_variation_ratio(const Mat& m_p, const Mat& d_r_m, const Vec& r);

/// rho(M_b M_a^-1 - I) / ||M_a (a - b)||, evaluated as rho((M_b - M_a) M_a^-1).
double variation_ratio(const Mat& m_a, const Mat& m_b, const Vec& a, const Vec& b);

/// A sample point for the differentiable variation. For PL fields the point
/// is strictly inside `simplex`; analytic samples keep a margin of twice
/// the finite-difference step from the domain boundary.
struct InteriorSample {
  Vec p;
  std::size_t simplex = 0;
};
InteriorSample interior_sample(const MetricField& field, std::uint64_t index, std::uint64_t seed);

inline constexpr std::size_t kDefaultSampleDirections = 32;

/// max over num_points interior points and num_dirs half-sphere directions
/// of rho(D_r M_p M_p^-1) / ||M_p r||.
double sigma1_sampled(const MetricField& field, std::size_t num_points,
                      std::size_t num_dirs = kDefaultSampleDirections, std::uint64_t seed = 0);

/// Empirical max of variation_ratio over num_pairs pairs. Half of the pairs
/// are local pairs p +- h r built on the sigma1_sampled lattice (points and
/// directions of the same seed and num_dirs), the rest independent Halton
/// pairs over the domain. With num_pairs = 4 * num_points * num_dirs the
/// local pairs cover every (p, r) of sigma1_sampled, which then bounds it
/// from above up to rounding.
double sigma0_sampled(const MetricField& field, std::size_t num_pairs, std::uint64_t seed = 0,
                      std::size_t num_dirs = kDefaultSampleDirections);

/// Pairs (a, b) with b drawn uniformly from the metric ball
/// { b : ||M_a (a - b)|| <= radius }, a from a Halton set over the domain.
/// Pairs leaving the domain are discarded and redrawn.
std::vector<std::pair<Vec, Vec>> sample_metric_ball_pairs(const MetricField& field, double radius,
                                                          std::size_t num_pairs, std::uint64_t seed);

/// Empirical sigma_0(C): max of variation_ratio over metric-ball pairs of
/// radius C.
double sigma0_restricted_sampled(const MetricField& field, double cover, std::size_t num_pairs,
                                 std::uint64_t seed = 0);

/// sigma1 (1 + C sigma1 + (C sigma1)^2 / 3). Throws Argument on negative input.
double sigma0_of_C_bound(double sigma1, double cover);

struct VariationReport {
  double sigma1_bound = 0.0;
  double sigma1_sampled = 0.0;
  std::size_t sigma1_points = 0;
  std::size_t sigma1_dirs = 0;
  double sigma0_sampled = 0.0;
  std::size_t sigma0_pairs = 0;
  double cover = 0.0;
  double sigma0_of_C_bound = 0.0;
  std::uint64_t seed = 0;
};

/// PL bound plus matched sampled estimates and the sigma_0(C) bound.
VariationReport variation_report(const MetricField& pl_field, std::size_t num_points, std::size_t num_dirs,
                                 double cover, std::uint64_t seed);

}  // namespace avd
