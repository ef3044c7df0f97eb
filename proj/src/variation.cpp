#include "avd/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "avd/error.hpp"
#include "avd/sampling.hpp"
#include "parallel.hpp"

namespace avd {

double sigma1_pl_term(const SimplicialMetricMesh& mesh, std::size_t simplex) {
  double lambda_min = std::numeric_limits<double>::infinity();
  for (int v : mesh.simplex(simplex)) lambda_min = std::min(lambda_min, mesh.vertex_m(v).min_eigenvalue());
  if (!(lambda_min > 1e-12)) {
    std::ostringstream os;
    os << "simplex " << simplex << " has a vertex matrix with smallest eigenvalue " << lambda_min
       << " <= 1e-12; the variation bound diverges";
    throw Error(ErrorCode::Degenerate, os.str());
  }
  double sum_sq = 0.0;
  for (int k = 0; k < mesh.dimension(); ++k) {
    const double r = rho(mesh.derivative(simplex, k));
    sum_sq += r * r;
  }
  return std::sqrt(sum_sq) / (lambda_min * lambda_min);
}

double sigma1_pl_bound(const SimplicialMetricMesh& mesh) {
  double bound = 0.0;
  for (std::size_t i = 0; i < mesh.num_simplices(); ++i) bound = std::max(bound, sigma1_pl_term(mesh, i));
  return bound;
}

double differential_variation_ratio(const Mat& m_p, const Mat& d_r_m, const Vec& r) {
  return rho(d_r_m * inverse(m_p)) / (m_p * r).norm();
}

double variation_ratio(const Mat& m_a, const Mat& m_b, const Vec& a, const Vec& b) {
  const double len = anisotropic_length(m_a, a, b);
  if (len == 0.0) return 0.0;
  return rho((m_b - m_a) * inverse(m_a)) / len;
}

InteriorSample interior_sample(const MetricField& field, std::uint64_t index, std::uint64_t seed) {
  const int n = field.dimension();
  InteriorSample s;
  if (const SimplicialMetricMesh* mesh = field.mesh()) {
    const std::size_t m = mesh->num_simplices();
    s.simplex = static_cast<std::size_t>(index % m);
    const HaltonSequence h(n, seed);
    // Sorted uniforms give uniformly distributed barycentric weights.
    std::array<double, 4> cut{};
    for (int k = 0; k < n; ++k) cut[k] = h(index / m, k);
    std::sort(cut.begin(), cut.begin() + n);
    std::array<double, 4> w{};
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
      w[k] = cut[k] - prev;
      prev = cut[k];
    }
    w[n] = 1.0 - prev;
    const auto verts = mesh->simplex(s.simplex);
    s.p = Vec::Zero(n);
    for (int a = 0; a <= n; ++a) s.p += w[a] * mesh->vertex(verts[a]);
    return s;
  }
  const HaltonSequence h(n, seed);
  const Box& box = field.domain();
  const double margin = 2.0 * field.fd_step();
  s.p.resize(n);
  for (int k = 0; k < n; ++k)
    s.p[k] = box.lo[k] + margin + h(index, k) * (box.hi[k] - box.lo[k] - 2.0 * margin);
  return s;
}

namespace {

// sup over the given directions at one sample.
double sample_sigma1(const MetricField& field, const InteriorSample& s, const std::vector<Vec>& dirs) {
  double best = 0.0;
  if (const SimplicialMetricMesh* mesh = field.mesh()) {
    const Mat m_p = mesh->interpolate_in(s.simplex, s.p);
    const Mat m_inv = inverse(m_p);
    for (const Vec& r : dirs) {
      const Mat d = directional_derivative_in_simplex(*mesh, s.simplex, r);
      best = std::max(best, rho(d * m_inv) / (m_p * r).norm());
    }
    return best;
  }
  const Mat m_p = field.sqrt_metric(s.p);
  const Mat m_inv = inverse(m_p);
  for (const Vec& r : dirs) {
    const Mat d = directional_derivative_M(field, s.p, r);
    best = std::max(best, rho(d * m_inv) / (m_p * r).norm());
  }
  return best;
}

// Local pairs (p, p + t r) and (p, p - t r) for every direction.
double sample_local_sigma0(const MetricField& field, const InteriorSample& s, const std::vector<Vec>& dirs) {
  double best = 0.0;
  if (const SimplicialMetricMesh* mesh = field.mesh()) {
    const double step = 0.5 * mesh->interior_step(s.simplex, s.p);
    if (!(step > 0.0)) return 0.0;
    const Mat m_p = mesh->interpolate_in(s.simplex, s.p);
    for (const Vec& r : dirs) {
      const Vec fwd = s.p + step * r, bwd = s.p - step * r;
      best = std::max(best, variation_ratio(m_p, mesh->interpolate_in(s.simplex, fwd), s.p, fwd));
      best = std::max(best, variation_ratio(m_p, mesh->interpolate_in(s.simplex, bwd), s.p, bwd));
    }
    return best;
  }
  const double h = field.fd_step();
  const Mat m_p = field.sqrt_metric(s.p);
  for (const Vec& r : dirs) {
    const Vec fwd = s.p + h * r, bwd = s.p - h * r;
    best = std::max(best, variation_ratio(m_p, field.sqrt_metric(fwd), s.p, fwd));
    best = std::max(best, variation_ratio(m_p, field.sqrt_metric(bwd), s.p, bwd));
  }
  return best;
}

double parallel_max(std::size_t count, const std::function<double(std::size_t)>& value) {
  std::vector<double> per(count, 0.0);
  detail::parallel_for(count, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) per[i] = value(i);
  });
  return per.empty() ? 0.0 : *std::max_element(per.begin(), per.end());
}

}  // namespace

double sigma1_sampled(const MetricField& field, std::size_t num_points, std::size_t num_dirs, std::uint64_t seed) {
  if (field.smoothness() == Smoothness::C0) throw Error(ErrorCode::Argument, "sigma1 needs a C1 or PL field");
  if (num_dirs == 0) throw Error(ErrorCode::Argument, "num_dirs must be positive");
  const auto dirs = half_sphere_directions(field.dimension(), num_dirs);
  return parallel_max(num_points, [&](std::size_t i) { return sample_sigma1(field, interior_sample(field, i, seed), dirs); });
}

double sigma0_sampled(const MetricField& field, std::size_t num_pairs, std::uint64_t seed, std::size_t num_dirs) {
  if (num_dirs == 0) throw Error(ErrorCode::Argument, "num_dirs must be positive");
  const int n = field.dimension();
  const std::size_t per_point = 2 * num_dirs;
  const std::size_t local_points = (num_pairs / 2 + per_point - 1) / per_point;
  const std::size_t far_pairs = num_pairs > local_points * per_point ? num_pairs - local_points * per_point : 0;

  double best = 0.0;
  if (field.smoothness() != Smoothness::C0) {
    const auto dirs = half_sphere_directions(n, num_dirs);
    best = parallel_max(local_points,
                        [&](std::size_t i) { return sample_local_sigma0(field, interior_sample(field, i, seed), dirs); });
  }
  const HaltonSequence h(2 * n, seed);
  const Box& box = field.domain();
  const double far = parallel_max(far_pairs, [&](std::size_t i) {
    Vec a(n), b(n);
    for (int k = 0; k < n; ++k) {
      a[k] = box.lo[k] + h(i, k) * (box.hi[k] - box.lo[k]);
      b[k] = box.lo[k] + h(i, n + k) * (box.hi[k] - box.lo[k]);
    }
    if (const SimplicialMetricMesh* mesh = field.mesh())
      if (!mesh->locate(a) || !mesh->locate(b)) return 0.0;
    return variation_ratio(field.sqrt_metric(a), field.sqrt_metric(b), a, b);
  });
  return std::max(best, far);
}

std::vector<std::pair<Vec, Vec>> sample_metric_ball_pairs(const MetricField& field, double radius,
                                                          std::size_t num_pairs, std::uint64_t seed) {
  if (!(radius > 0.0)) throw Error(ErrorCode::Argument, "ball radius must be positive");
  const int n = field.dimension();
  const HaltonSequence h(2 * n, seed);
  const Box& box = field.domain();
  const SimplicialMetricMesh* mesh = field.mesh();
  auto inside = [&](const Vec& p) { return box.contains(p, 0.0) && (!mesh || mesh->locate(p)); };

  std::vector<std::pair<Vec, Vec>> pairs;
  pairs.reserve(num_pairs);
  const std::uint64_t max_draws = 64 * static_cast<std::uint64_t>(num_pairs) + 64;
  for (std::uint64_t i = 0; i < max_draws && pairs.size() < num_pairs; ++i) {
    Vec a(n);
    for (int k = 0; k < n; ++k) a[k] = box.lo[k] + h(i, k) * (box.hi[k] - box.lo[k]);
    if (!inside(a)) continue;
    Vec u(n);
    if (n == 2) {
      const double angle = 2.0 * std::numbers::pi * h(i, 2);
      u << std::cos(angle), std::sin(angle);
    } else {
      const double z = 2.0 * h(i, 3) - 1.0, phi = 2.0 * std::numbers::pi * h(i, 4);
      const double rr = std::sqrt(std::max(0.0, 1.0 - z * z));
      u << rr * std::cos(phi), rr * std::sin(phi), z;
    }
    const double t = radius * std::pow(h(i, 2 * n - 1), 1.0 / n);
    const Vec b = a + inverse(field.sqrt_metric(a)) * (t * u);
    if (!inside(b)) continue;
    pairs.emplace_back(a, b);
  }
  if (pairs.size() < num_pairs)
    throw Error(ErrorCode::Domain, "could not draw enough metric-ball pairs inside the domain");
  return pairs;
}

double sigma0_restricted_sampled(const MetricField& field, double cover, std::size_t num_pairs, std::uint64_t seed) {
  const auto pairs = sample_metric_ball_pairs(field, cover, num_pairs, seed);
  return parallel_max(pairs.size(), [&](std::size_t i) {
    const auto& [a, b] = pairs[i];
    return variation_ratio(field.sqrt_metric(a), field.sqrt_metric(b), a, b);
  });
}

double sigma0_of_C_bound(double sigma1, double cover) {
  if (!(sigma1 >= 0.0) || !(cover >= 0.0)) throw Error(ErrorCode::Argument, "sigma1 and C must be non-negative");
  const double x = cover * sigma1;
  return sigma1 * (1.0 + x + x * x / 3.0);
}

VariationReport variation_report(const MetricField& pl_field, std::size_t num_points, std::size_t num_dirs,
                                 double cover, std::uint64_t seed) {
  if (!pl_field.mesh()) throw Error(ErrorCode::Argument, "variation report needs a PL field");
  VariationReport r;
  r.sigma1_bound = sigma1_pl_bound(*pl_field.mesh());
  r.sigma1_points = num_points;
  r.sigma1_dirs = num_dirs;
  r.seed = seed;
  r.sigma1_sampled = sigma1_sampled(pl_field, num_points, num_dirs, seed);
  r.sigma0_pairs = 4 * num_points * num_dirs;
  r.sigma0_sampled = sigma0_sampled(pl_field, r.sigma0_pairs, seed, num_dirs);
  r.cover = cover;
  r.sigma0_of_C_bound = sigma0_of_C_bound(r.sigma1_bound, cover);
  return r;
}

}  // namespace avd
