#pragma once

// Dense numerics for O(n) / SO(n) and the Lie algebra o(n) of skew matrices.

#include <Eigen/Dense>

#include "jetreg/error.hpp"

namespace jetreg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Element of o(n): a skew-symmetric n x n matrix.  Construction from an
/// arbitrary square matrix keeps only its antisymmetric part.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(const Matrix& m);

  static AlgebraElement zero(int n);
  /// Coordinates are the strict upper triangle, row by row.
  static AlgebraElement from_coords(int n, const Vector& coords);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  Vector coords() const;
  double norm() const;

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(double a);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(double s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, double s) { return a *= s; }
  AlgebraElement operator-() const { return (*this) * -1.0; }

 private:
  struct Trusted {};
  AlgebraElement(Matrix m, Trusted) : m_(std::move(m)) {}
  friend AlgebraElement bracket(const AlgebraElement&, const AlgebraElement&);

  Matrix m_;
};

/// dim o(n) = n(n-1)/2
inline int algebra_dim(int n) { return n * (n - 1) / 2; }

/// Orthogonal matrix.  `det_sign()` records the connected component.
class Rotation {
 public:
  Rotation() = default;

  static Rotation identity(int n);
  /// Validates ||R^T R - I||_F <= tol and throws NotOrthogonal otherwise.
  static Rotation from_matrix(const Matrix& m, double tol = 1e-12);
  /// Wraps a matrix the caller guarantees is orthogonal (products, exponentials).
  static Rotation adopt(Matrix m);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  int det_sign() const { return det_sign_; }
  double orthogonality_error() const;

  Rotation inverse() const { return adopt(m_.transpose()); }
  Rotation operator*(const Rotation& o) const { return adopt(m_ * o.m_); }
  Matrix operator*(const Matrix& a) const { return m_ * a; }

 private:
  Matrix m_;
  int det_sign_ = 1;
};

Rotation exp_algebra(const AlgebraElement& omega);
/// Principal logarithm.  Throws AngleAtCut when a rotation angle reaches pi - 1e-8
/// and ComponentMismatch for det = -1 input.
AlgebraElement log_rotation(const Rotation& r);
/// Largest rotation angle (in [0, pi]) among the planes of r.
double max_rotation_angle(const Rotation& r);

/// <a, b> = tr(a^T b)
double inner_algebra(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b);

/// g a g^{-1}
AlgebraElement adjoint(const Rotation& g, const AlgebraElement& a);

AlgebraElement hat2(double omega);
double vee2(const AlgebraElement& a);

/// Uses the convention Omega_ij = eps_ijk omega_k.
AlgebraElement hat3(const Eigen::Vector3d& omega);
Eigen::Vector3d vee3(const AlgebraElement& a);

/// 2x2 rotation by theta.
Rotation rotation2(double theta);

/// Nearest orthogonal matrix (polar factor).  Keeps the sign of det(m).
Rotation project_rotation(const Matrix& m);

/// diag(-1, 1, ..., 1)
Rotation reflection(int n);

}  // namespace jetreg
