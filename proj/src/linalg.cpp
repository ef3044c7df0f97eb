#include "avd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include <Eigen/Geometry>
#include <sstream>

#include "avd/error.hpp"

namespace avd {

namespace {

SymEigenvalues eigenvalues_2x2(const Mat& a) {
  const double half_sum = 0.5 * (a(0, 0) + a(1, 1));
  const double half_diff = 0.5 * (a(0, 0) - a(1, 1));
  const double radius = std::hypot(half_diff, a(0, 1));
  SymEigenvalues e;
  e.size = 2;
  e.values[1] = half_sum + radius;
  e.values[0] = half_sum - radius;
  // Recover the smaller root from the determinant when it is the one that
  // suffers cancellation.
  const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(0, 1);
  if (half_sum > 0.0 && e.values[1] != 0.0) e.values[0] = det / e.values[1];
  else if (half_sum < 0.0 && e.values[0] != 0.0) e.values[1] = det / e.values[0];
  return e;
}

// det(A - x I) for symmetric 3x3 A and its derivative in x.
void char_poly_3x3(const Mat& a, double x, double& value, double& slope) {
  const double b00 = a(0, 0) - x, b11 = a(1, 1) - x, b22 = a(2, 2) - x;
  const double b01 = a(0, 1), b02 = a(0, 2), b12 = a(1, 2);
  const double m0 = b11 * b22 - b12 * b12;
  const double m1 = b00 * b22 - b02 * b02;
  const double m2 = b00 * b11 - b01 * b01;
  value = b00 * m0 - b01 * (b01 * b22 - b12 * b02) + b02 * (b01 * b12 - b11 * b02);
  slope = -(m0 + m1 + m2);
}

double polish_root(const Mat& a, double root, double scale) {
  double f, df;
  char_poly_3x3(a, root, f, df);
  for (int it = 0; it < 3 && f != 0.0; ++it) {
    if (df == 0.0) break;
    const double step = f / df;
    if (!(std::abs(step) <= 1e-6 * scale)) break;
    const double candidate = root - step;
    double fc, dfc;
    char_poly_3x3(a, candidate, fc, dfc);
    if (!(std::abs(fc) < std::abs(f))) break;
    root = candidate;
    f = fc;
    df = dfc;
  }
  return root;
}

// Eigenvalues of A restricted to the plane orthogonal to the eigenvector of
// the simple eigenvalue `lambda`. Empty when that eigenvector cannot be
// formed (A - lambda I of rank < 2).
std::optional<std::array<double, 2>> deflated_pair(const Mat& a, double lambda) {
  const Eigen::Vector3d r0(a(0, 0) - lambda, a(0, 1), a(0, 2));
  const Eigen::Vector3d r1(a(0, 1), a(1, 1) - lambda, a(1, 2));
  const Eigen::Vector3d r2(a(0, 2), a(1, 2), a(2, 2) - lambda);
  const std::array<Eigen::Vector3d, 3> candidates{r0.cross(r1), r0.cross(r2), r1.cross(r2)};
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (candidates[i].squaredNorm() > candidates[best].squaredNorm()) best = i;
  const double norm = candidates[best].norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) return std::nullopt;
  const Eigen::Vector3d v = candidates[best] / norm;
  int axis = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(v[k]) < std::abs(v[axis])) axis = k;
  const Eigen::Vector3d u1 = Eigen::Vector3d::Unit(axis).cross(v).normalized();
  const Eigen::Vector3d u2 = v.cross(u1);
  Eigen::Matrix3d full;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) full(i, j) = a(std::min(i, j), std::max(i, j));
  Mat block(2, 2);
  block(0, 0) = u1.dot(full * u1);
  block(0, 1) = block(1, 0) = u1.dot(full * u2);
  block(1, 1) = u2.dot(full * u2);
  const SymEigenvalues e = eigenvalues_2x2(block);
  return std::array<double, 2>{e.values[0], e.values[1]};
}

SymEigenvalues eigenvalues_3x3(const Mat& a) {
  SymEigenvalues e;
  e.size = 3;
  const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  if (off == 0.0) {
    e.values = {a(0, 0), a(1, 1), a(2, 2)};
    std::sort(e.values.begin(), e.values.end());
    return e;
  }
  const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
  const double d0 = a(0, 0) - q, d1 = a(1, 1) - q, d2 = a(2, 2) - q;
  const double p = std::sqrt((d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * off) / 6.0);
  // B = (A - qI) / p; r = det(B) / 2.
  const double b00 = d0 / p, b11 = d1 / p, b22 = d2 / p;
  const double b01 = a(0, 1) / p, b02 = a(0, 2) / p, b12 = a(1, 2) / p;
  const double det_b = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                       b02 * (b01 * b12 - b11 * b02);
  const double r = std::clamp(0.5 * det_b, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double largest = q + 2.0 * p * std::cos(phi);
  const double smallest = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double middle = 3.0 * q - largest - smallest;

  const double scale = std::max({std::abs(largest), std::abs(smallest), p});
  // The root farther from the middle one is simple and well conditioned;
  // the remaining pair comes from the 2x2 block on its orthogonal
  // complement, which stays accurate near a double root where the cubic
  // formula loses half the digits.
  const bool top_isolated = largest - middle >= middle - smallest;
  const double isolated = polish_root(a, top_isolated ? largest : smallest, scale);
  if (const auto pair = deflated_pair(a, isolated)) {
    e.values = {isolated, (*pair)[0], (*pair)[1]};
  } else {
    e.values = {polish_root(a, smallest, scale), polish_root(a, middle, scale), polish_root(a, largest, scale)};
  }
  std::sort(e.values.begin(), e.values.end());
  return e;
}

void require_square_small(const Mat& a) {
  if (a.rows() != a.cols() || a.rows() < 1 || a.rows() > 3) {
    std::ostringstream os;
    os << "expected a square matrix of size 1..3, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::Argument, os.str());
  }
}

}  // namespace

SymEigenvalues symmetric_eigenvalues(const Mat& a) {
  require_square_small(a);
  switch (a.rows()) {
    case 1: {
      SymEigenvalues e;
      e.size = 1;
      e.values[0] = a(0, 0);
      return e;
    }
    case 2:
      return eigenvalues_2x2(a);
    default:
      return eigenvalues_3x3(a);
  }
}

bool is_symmetric(const Mat& a) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

double determinant(const Mat& a) {
  require_square_small(a);
  switch (a.rows()) {
    case 1:
      return a(0, 0);
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    default:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }
}

Mat inverse(const Mat& a) {
  const double det = determinant(a);
  if (det == 0.0 || !std::isfinite(det)) throw Error(ErrorCode::Degenerate, "matrix is singular");
  const int n = static_cast<int>(a.rows());
  Mat inv(n, n);
  if (n == 1) {
    inv(0, 0) = 1.0 / det;
  } else if (n == 2) {
    inv << a(1, 1), -a(0, 1), -a(1, 0), a(0, 0);
    inv /= det;
  } else {
    inv(0, 0) = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    inv(0, 1) = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
    inv(0, 2) = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
    inv(1, 0) = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
    inv(1, 1) = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
    inv(1, 2) = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
    inv(2, 0) = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
    inv(2, 1) = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
    inv(2, 2) = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    inv /= det;
  }
  return inv;
}

double rho(const Mat& a) {
  require_square_small(a);
  if (is_symmetric(a)) {
    const SymEigenvalues e = symmetric_eigenvalues(a);
    return std::max(std::abs(e.min()), std::abs(e.max()));
  }
  const Mat gram = a.transpose() * a;
  return std::sqrt(std::max(0.0, symmetric_eigenvalues(gram).max()));
}

double rho_min(const Mat& a) {
  require_square_small(a);
  const int n = static_cast<int>(a.rows());
  if (is_symmetric(a)) {
    const SymEigenvalues e = symmetric_eigenvalues(a);
    if (e.min() > 0.0) return e.min();
    double m = std::abs(e.values[0]);
    for (int i = 1; i < n; ++i) m = std::min(m, std::abs(e.values[i]));
    return m;
  }
  if (n == 1) return std::abs(a(0, 0));
  // Singular values multiply to |det A|; the larger ones are computed
  // accurately from A^t A, the smallest is recovered from the product.
  const SymEigenvalues g = symmetric_eigenvalues(a.transpose() * a);
  double larger = 1.0;
  for (int i = 1; i < n; ++i) larger *= std::sqrt(std::max(0.0, g.values[i]));
  if (larger == 0.0) return 0.0;
  return std::abs(determinant(a)) / larger;
}

SpdMatrix::SpdMatrix(const Mat& a) {
  require_square_small(a);
  const int n = static_cast<int>(a.rows());
  m_.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m_(i, j) = m_(j, i) = a(i, j);
  if (!m_.allFinite()) throw Error(ErrorCode::NotSpd, "matrix has non-finite entries");
  eig_ = symmetric_eigenvalues(m_);
  if (!(eig_.min() > 0.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "matrix is not positive definite: smallest eigenvalue " << eig_.min();
    throw Error(ErrorCode::NotSpd, os.str());
  }
}

SpdMatrix SpdMatrix::from_upper(int n, const double* upper) {
  if (n != 2 && n != 3) throw Error(ErrorCode::Argument, "dimension must be 2 or 3");
  Mat m(n, n);
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = upper[k++];
  return SpdMatrix(m);
}

SpdMatrix sqrt_spd(const SpdMatrix& q) {
  const int n = q.dimension();
  const SymEigenvalues& e = q.eigenvalues();
  const Mat& a = q.matrix();
  const Mat id = Mat::Identity(n, n);
  if (n == 1) {
    Mat m(1, 1);
    m(0, 0) = std::sqrt(a(0, 0));
    return SpdMatrix(m);
  }
  if (n == 2) {
    // M = (Q + sqrt(det Q) I) / (sqrt(l1) + sqrt(l2)).
    const double s0 = std::sqrt(e.values[0]), s1 = std::sqrt(e.values[1]);
    return SpdMatrix((a + (s0 * s1) * id) / (s0 + s1));
  }
  // Cayley-Hamilton for M: M^3 - I1 M^2 + I2 M - I3 = 0 with M^2 = Q gives
  // M (Q + I2) = I1 Q + I3, both factors commuting with Q.
  const double s0 = std::sqrt(e.values[0]), s1 = std::sqrt(e.values[1]),
               s2 = std::sqrt(e.values[2]);
  const double i1 = s0 + s1 + s2;
  const double i2 = s0 * s1 + s0 * s2 + s1 * s2;
  const double i3 = s0 * s1 * s2;
  const Mat m = inverse(a + i2 * id) * (i1 * a + i3 * id);
  return SpdMatrix(0.5 * (m + m.transpose()));
}

}  // namespace avd
