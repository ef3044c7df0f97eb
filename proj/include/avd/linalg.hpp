#pragma once

// Small dense linear algebra for n in {2, 3}: closed-form symmetric
// eigenvalues, spectral norms and the SPD square root.

#include <array>
#include <Eigen/Core>

namespace avd {

/// Column vector / square matrix of runtime size at most 3, stored inline.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 3, 3>;

/// Eigenvalues of a symmetric matrix in ascending order; only the first
/// `size` entries are meaningful.
struct SymEigenvalues {
  int size = 0;
  std::array<double, 3> values{};
  double min() const { return values[0]; }
  double max() const { return values[size - 1]; }
};

/// Closed-form eigenvalues of a symmetric 2x2 or 3x3 matrix: the analytic
/// quadratic formula for n = 2, the trigonometric method for n = 3 followed
/// by Newton polishing on det(A - lambda I). Only the upper triangle is read.
SymEigenvalues symmetric_eigenvalues(const Mat& a);

/// Spectral norm (largest singular value) of any square matrix.
double rho(const Mat& a);

/// Smallest singular value. For SPD input this is the smallest eigenvalue.
double rho_min(const Mat& a);

double determinant(const Mat& a);
Mat inverse(const Mat& a);

bool is_symmetric(const Mat& a);

/// Symmetric positive-definite matrix. Construction checks symmetry and
/// strict positivity of the smallest eigenvalue and throws avd::Error
/// (NotSpd) otherwise.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Mat& a);

  /// Builds from the upper triangle in row order: (m11, m12, m22) for n = 2
  /// and (m11, m12, m13, m22, m23, m33) for n = 3.
  static SpdMatrix from_upper(int n, const double* upper);

  int dimension() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  const SymEigenvalues& eigenvalues() const { return eig_; }
  double min_eigenvalue() const { return eig_.min(); }
  double max_eigenvalue() const { return eig_.max(); }

 private:
  Mat m_;
  SymEigenvalues eig_;
};

/// Unique SPD M with M * M = Q, from eigenvalues only (Cayley-Hamilton).
SpdMatrix sqrt_spd(const SpdMatrix& q);

}  // namespace avd
