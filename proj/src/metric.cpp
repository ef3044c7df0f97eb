#include "avd/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "avd/error.hpp"
#include "avd/sampling.hpp"

namespace avd {

const char* to_string(DistanceKind kind) { return kind == DistanceKind::DW ? "dw" : "ls"; }

DistanceKind parse_distance_kind(std::string_view text) {
  if (text == "dw" || text == "DW") return DistanceKind::DW;
  if (text == "ls" || text == "LS") return DistanceKind::LS;
  throw Error(ErrorCode::Argument, "unknown distance kind '" + std::string(text) + "' (expected dw or ls)");
}

bool Box::contains(const Vec& p, double rel_tol) const {
  if (p.size() != lo.size()) return false;
  const double pad = rel_tol * diameter();
  for (int k = 0; k < p.size(); ++k)
    if (!(p[k] >= lo[k] - pad && p[k] <= hi[k] + pad)) return false;
  return true;
}

namespace {

constexpr double kBaryTol = 1e-12;

std::string format_point(const Vec& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (int k = 0; k < p.size(); ++k) os << (k ? ", " : "") << p[k];
  os << ")";
  return os.str();
}

}  // namespace

SimplicialMetricMesh::SimplicialMetricMesh(int dimension, std::vector<Vec> vertices,
                                           std::vector<std::array<int, 4>> simplices,
                                           std::vector<SpdMatrix> vertex_m)
    : dim_(dimension),
      vertices_(std::move(vertices)),
      simplices_(std::move(simplices)),
      vertex_m_(std::move(vertex_m)) {
  if (dim_ != 2 && dim_ != 3) throw Error(ErrorCode::Argument, "mesh dimension must be 2 or 3");
  if (vertices_.empty() || simplices_.empty()) throw Error(ErrorCode::Argument, "mesh needs vertices and simplices");
  if (vertex_m_.size() != vertices_.size())
    throw Error(ErrorCode::Argument, "one M matrix is required per vertex");

  bounds_.lo = bounds_.hi = vertices_[0];
  for (std::size_t j = 0; j < vertices_.size(); ++j) {
    if (vertices_[j].size() != dim_ || vertex_m_[j].dimension() != dim_)
      throw Error(ErrorCode::Argument, "vertex " + std::to_string(j) + " has the wrong dimension");
    bounds_.lo = bounds_.lo.cwiseMin(vertices_[j]);
    bounds_.hi = bounds_.hi.cwiseMax(vertices_[j]);
  }
  const double diam = bounds_.diameter();
  const double volume_tol = 1e-12 * std::pow(diam, dim_);

  edge_inverse_.reserve(simplices_.size());
  derivs_.reserve(simplices_.size() * dim_);
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto& s = simplices_[i];
    for (int a = 0; a <= dim_; ++a) {
      if (s[a] < 0 || static_cast<std::size_t>(s[a]) >= vertices_.size())
        throw Error(ErrorCode::Argument, "simplex " + std::to_string(i) + " references a missing vertex");
    }
    Mat edges(dim_, dim_);
    for (int j = 0; j < dim_; ++j) edges.col(j) = vertices_[s[j + 1]] - vertices_[s[0]];
    const double det = determinant(edges);
    if (!(std::abs(det) > volume_tol))
      throw Error(ErrorCode::Degenerate, "simplex " + std::to_string(i) + " is degenerate");
    const Mat inv = inverse(edges);
    edge_inverse_.push_back(inv);
    // dM/dx_k = sum_j inv(j, k) (M_{v_j} - M_{v_0}).
    for (int k = 0; k < dim_; ++k) {
      Mat d = Mat::Zero(dim_, dim_);
      for (int j = 0; j < dim_; ++j)
        d += inv(j, k) * (vertex_m_[s[j + 1]].matrix() - vertex_m_[s[0]].matrix());
      derivs_.push_back(d);
    }
  }
  build_locator();
}

void SimplicialMetricMesh::build_locator() {
  const double per_axis = std::ceil(std::pow(static_cast<double>(simplices_.size()), 1.0 / dim_));
  const int n = std::clamp(static_cast<int>(per_axis), 1, 512);
  buckets_per_axis_ = {1, 1, 1};
  std::size_t total = 1;
  for (int k = 0; k < dim_; ++k) {
    buckets_per_axis_[k] = n;
    total *= n;
  }
  buckets_.assign(total, {});
  const Vec extent = bounds_.hi - bounds_.lo;
  auto bucket_coord = [&](double x, int k) {
    if (extent[k] <= 0.0) return 0;
    const int c = static_cast<int>(std::floor((x - bounds_.lo[k]) / extent[k] * buckets_per_axis_[k]));
    return std::clamp(c, 0, buckets_per_axis_[k] - 1);
  };
  const double pad = 1e-9 * bounds_.diameter();
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    std::array<int, 3> lo{0, 0, 0}, hi{0, 0, 0};
    for (int k = 0; k < dim_; ++k) {
      double mn = std::numeric_limits<double>::infinity(), mx = -mn;
      for (int a = 0; a <= dim_; ++a) {
        mn = std::min(mn, vertices_[simplices_[i][a]][k]);
        mx = std::max(mx, vertices_[simplices_[i][a]][k]);
      }
      lo[k] = bucket_coord(mn - pad, k);
      hi[k] = bucket_coord(mx + pad, k);
    }
    for (int z = lo[2]; z <= hi[2]; ++z)
      for (int y = lo[1]; y <= hi[1]; ++y)
        for (int x = lo[0]; x <= hi[0]; ++x)
          buckets_[(static_cast<std::size_t>(z) * buckets_per_axis_[1] + y) * buckets_per_axis_[0] + x].push_back(i);
  }
}

std::array<double, 4> SimplicialMetricMesh::barycentric(std::size_t i, const Vec& p) const {
  const Vec local = edge_inverse_[i] * (p - vertices_[simplices_[i][0]]);
  std::array<double, 4> w{};
  double sum = 0.0;
  for (int j = 0; j < dim_; ++j) {
    w[j + 1] = local[j];
    sum += local[j];
  }
  w[0] = 1.0 - sum;
  return w;
}

std::optional<std::size_t> SimplicialMetricMesh::locate(const Vec& p) const {
  if (p.size() != dim_) return std::nullopt;
  if (!bounds_.contains(p)) return std::nullopt;
  const Vec extent = bounds_.hi - bounds_.lo;
  std::size_t flat = 0;
  for (int k = dim_ - 1; k >= 0; --k) {
    int c = 0;
    if (extent[k] > 0.0)
      c = std::clamp(static_cast<int>(std::floor((p[k] - bounds_.lo[k]) / extent[k] * buckets_per_axis_[k])), 0,
                     buckets_per_axis_[k] - 1);
    flat = flat * buckets_per_axis_[k] + c;
  }
  for (std::size_t i : buckets_[flat]) {
    const auto w = barycentric(i, p);
    bool inside = true;
    for (int a = 0; a <= dim_; ++a) inside = inside && w[a] >= -kBaryTol;
    if (inside) return i;
  }
  return std::nullopt;
}

std::size_t SimplicialMetricMesh::nearest_simplex(const Vec& p) const {
  std::size_t best = 0;
  double best_violation = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < simplices_.size(); ++i) {
    const auto w = barycentric(i, p);
    double violation = 0.0;
    for (int a = 0; a <= dim_; ++a) violation = std::max(violation, -w[a]);
    if (violation < best_violation) {
      best_violation = violation;
      best = i;
    }
  }
  return best;
}

Mat SimplicialMetricMesh::interpolate_in(std::size_t i, const Vec& p) const {
  const auto& s = simplices_[i];
  for (int a = 0; a <= dim_; ++a)
    if (vertices_[s[a]] == p) return vertex_m_[s[a]].matrix();
  // M_0 + sum_a w_a (M_a - M_0): exact for constant fields.
  const auto w = barycentric(i, p);
  const Mat& base = vertex_m_[s[0]].matrix();
  Mat m = base;
  for (int a = 1; a <= dim_; ++a) m += w[a] * (vertex_m_[s[a]].matrix() - base);
  return m;
}

Mat SimplicialMetricMesh::interpolate(const Vec& p) const {
  const auto i = locate(p);
  if (!i) {
    std::ostringstream os;
    os << "point " << format_point(p) << " lies outside the simplicial complex (nearest simplex "
       << (p.size() == dim_ ? nearest_simplex(p) : 0) << ")";
    throw Error(ErrorCode::Domain, os.str());
  }
  return interpolate_in(*i, p);
}

double SimplicialMetricMesh::interior_step(std::size_t i, const Vec& p) const {
  // Barycentric coordinate j >= 1 changes by row j-1 of the edge inverse per
  // unit displacement; coordinate 0 by minus the column sum.
  const auto w = barycentric(i, p);
  const Mat& inv = edge_inverse_[i];
  double step = std::numeric_limits<double>::infinity();
  for (int a = 0; a <= dim_; ++a) {
    const double rate = a == 0 ? inv.colwise().sum().norm() : inv.row(a - 1).norm();
    if (rate > 0.0) step = std::min(step, std::max(0.0, w[a]) / rate);
  }
  return step;
}

MetricField MetricField::analytic(Box domain, Evaluator sqrt_metric, Smoothness smoothness) {
  if (domain.lo.size() != domain.hi.size() || (domain.dimension() != 2 && domain.dimension() != 3))
    throw Error(ErrorCode::Argument, "domain must be a 2D or 3D box");
  for (int k = 0; k < domain.dimension(); ++k)
    if (!(domain.hi[k] > domain.lo[k])) throw Error(ErrorCode::Argument, "domain box has empty extent");
  if (smoothness == Smoothness::PL) throw Error(ErrorCode::Argument, "analytic fields are C0 or C1");
  MetricField f;
  f.kind_ = FieldKind::Analytic;
  f.smoothness_ = smoothness;
  f.domain_ = std::move(domain);
  f.eval_ = std::move(sqrt_metric);
  // Probe the evaluator on a Halton set (plus the corners lo/hi).
  const int n = f.dimension();
  HaltonSequence h(n, 0);
  for (std::uint64_t i = 0; i < 64; ++i) {
    Vec p(n);
    for (int k = 0; k < n; ++k) p[k] = f.domain_.lo[k] + h(i, k) * (f.domain_.hi[k] - f.domain_.lo[k]);
    if (i == 0) p = f.domain_.lo;
    if (i == 1) p = f.domain_.hi;
    const Mat m = f.eval_(p);
    if (m.rows() != n || m.cols() != n || !is_symmetric(m))
      throw Error(ErrorCode::NotSpd, "analytic evaluator returned a non-symmetric or mis-sized matrix at " + format_point(p));
    SpdMatrix checked(m);
  }
  return f;
}

MetricField MetricField::piecewise_linear(std::shared_ptr<const SimplicialMetricMesh> mesh) {
  if (!mesh) throw Error(ErrorCode::Argument, "null mesh");
  MetricField f;
  f.kind_ = FieldKind::PiecewiseLinear;
  f.smoothness_ = Smoothness::PL;
  f.domain_ = mesh->bounds();
  f.mesh_ = std::move(mesh);
  return f;
}

Mat MetricField::sqrt_metric(const Vec& p) const {
  if (mesh_) return mesh_->interpolate(p);
  return eval_(p);
}

Mat MetricField::metric(const Vec& p) const {
  const Mat m = sqrt_metric(p);
  return m.transpose() * m;
}

void MetricField::require_in_domain(const Vec& p) const {
  if (p.size() != dimension())
    throw Error(ErrorCode::Domain, "point " + format_point(p) + " has the wrong dimension");
  if (!domain_.contains(p)) throw Error(ErrorCode::Domain, "point " + format_point(p) + " lies outside the domain");
  if (mesh_ && !mesh_->locate(p)) {
    std::ostringstream os;
    os << "point " << format_point(p) << " lies outside the simplicial complex (nearest simplex "
       << mesh_->nearest_simplex(p) << ")";
    throw Error(ErrorCode::Domain, os.str());
  }
}

double dw_distance(const MetricField& field, const Vec& a, const Vec& b) {
  field.require_in_domain(a);
  field.require_in_domain(b);
  return anisotropic_length(field.sqrt_metric(b), a, b);
}

double ls_distance(const MetricField& field, const Vec& a, const Vec& b) { return dw_distance(field, b, a); }

double distance(const MetricField& field, DistanceKind kind, const Vec& a, const Vec& b) {
  return kind == DistanceKind::DW ? dw_distance(field, a, b) : ls_distance(field, a, b);
}

SpdMatrix interpolate_M(const SimplicialMetricMesh& mesh, const Vec& p) { return SpdMatrix(mesh.interpolate(p)); }

Mat directional_derivative_in_simplex(const SimplicialMetricMesh& mesh, std::size_t simplex, const Vec& r) {
  Mat d = Mat::Zero(mesh.dimension(), mesh.dimension());
  for (int k = 0; k < mesh.dimension(); ++k) d += r[k] * mesh.derivative(simplex, k);
  return d;
}

Mat directional_derivative_M(const MetricField& field, const Vec& p, const Vec& r) {
  if (r.size() != field.dimension()) throw Error(ErrorCode::Argument, "direction has the wrong dimension");
  if (std::abs(r.norm() - 1.0) > 1e-12) throw Error(ErrorCode::Argument, "direction must be a unit vector");
  if (field.smoothness() == Smoothness::C0)
    throw Error(ErrorCode::Argument, "directional derivatives need a C1 or PL field");
  if (const SimplicialMetricMesh* mesh = field.mesh()) {
    const auto i = mesh->locate(p);
    if (!i) throw Error(ErrorCode::Domain, "point " + format_point(p) + " lies outside the simplicial complex");
    const auto w = mesh->barycentric(*i, p);
    for (int a = 0; a <= mesh->dimension(); ++a)
      if (w[a] <= kBaryTol)
        throw Error(ErrorCode::Domain, "point " + format_point(p) + " lies on a face of simplex " + std::to_string(*i) +
                                           "; evaluate the derivative per simplex");
    return directional_derivative_in_simplex(*mesh, *i, r);
  }
  const double h = field.fd_step();
  return (field.sqrt_metric(p + h * r) - field.sqrt_metric(p - h * r)) / (2.0 * h);
}

}  // namespace avd
