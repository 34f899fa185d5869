#include "jetreg/liegroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace jetreg {

namespace {

constexpr double kCutMargin = 1e-8;

void require_square(const Matrix& m, const char* what) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch, std::string(what) + " must be square");
}

void require_same_dim(int a, int b) {
  require(a == b, ErrorCode::DimensionMismatch,
          "algebra dimensions differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::AngleAtCut: return "AngleAtCut";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ComponentMismatch: return "ComponentMismatch";
    case ErrorCode::NonMonotoneProfile: return "NonMonotoneProfile";
    case ErrorCode::UnsupportedProfile: return "UnsupportedProfile";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::AllStartsFailed: return "AllStartsFailed";
    case ErrorCode::SolverFailure: return "SolverFailure";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// AlgebraElement

AlgebraElement::AlgebraElement(const Matrix& m) {
  require_square(m, "algebra element");
  m_ = 0.5 * (m - m.transpose());
}

AlgebraElement AlgebraElement::zero(int n) { return AlgebraElement(Matrix::Zero(n, n), Trusted{}); }

AlgebraElement AlgebraElement::from_coords(int n, const Vector& coords) {
  require(coords.size() == algebra_dim(n), ErrorCode::DimensionMismatch,
          "coordinate vector has wrong length for o(" + std::to_string(n) + ")");
  Matrix m = Matrix::Zero(n, n);
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = coords(idx);
      m(j, i) = -coords(idx);
      ++idx;
    }
  }
  return AlgebraElement(std::move(m), Trusted{});
}

Vector AlgebraElement::coords() const {
  const int n = dim();
  Vector v(algebra_dim(n));
  int idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) v(idx++) = m_(i, j);
  return v;
}

double AlgebraElement::norm() const { return m_.norm(); }

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_dim(dim(), o.dim());
  m_ += o.m_;
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_dim(dim(), o.dim());
  m_ -= o.m_;
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(double a) {
  m_ *= a;
  return *this;
}

// ---------------------------------------------------------------------------
// Rotation

Rotation Rotation::identity(int n) { return adopt(Matrix::Identity(n, n)); }

Rotation Rotation::from_matrix(const Matrix& m, double tol) {
  require_square(m, "rotation");
  const double err = (m.transpose() * m - Matrix::Identity(m.rows(), m.cols())).norm();
  require(err <= tol, ErrorCode::NotOrthogonal,
          "||R^T R - I|| = " + std::to_string(err) + " exceeds " + std::to_string(tol));
  return adopt(m);
}

Rotation Rotation::adopt(Matrix m) {
  Rotation r;
  r.det_sign_ = m.rows() == 0 || m.determinant() > 0.0 ? 1 : -1;
  r.m_ = std::move(m);
  return r;
}

double Rotation::orthogonality_error() const {
  return (m_.transpose() * m_ - Matrix::Identity(dim(), dim())).norm();
}

// ---------------------------------------------------------------------------
// exp / log

Rotation exp_algebra(const AlgebraElement& omega) {
  const Matrix& w = omega.matrix();
  const int n = omega.dim();
  if (n == 1) return Rotation::identity(1);
  if (n == 2) return rotation2(w(1, 0));
  if (n == 3) {
    const double theta2 = 0.5 * w.squaredNorm();
    const double theta = std::sqrt(theta2);
    double a;  // sin(t)/t
    double b;  // (1 - cos(t))/t^2
    if (theta < 1e-4) {
      a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
      b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
    } else {
      a = std::sin(theta) / theta;
      b = (1.0 - std::cos(theta)) / theta2;
    }
    Matrix r = Matrix::Identity(3, 3) + a * w + b * (w * w);
    return Rotation::adopt(std::move(r));
  }
  Matrix r = w.exp();
  return Rotation::adopt(std::move(r));
}

double max_rotation_angle(const Rotation& r) {
  const Matrix& m = r.matrix();
  const int n = r.dim();
  if (n <= 1) return r.det_sign() > 0 ? 0.0 : std::numbers::pi;
  if (n == 2 && r.det_sign() > 0) return std::abs(std::atan2(m(1, 0), m(0, 0)));
  if (n == 3 && r.det_sign() > 0) {
    const double s = (m - m.transpose()).norm() / (2.0 * std::numbers::sqrt2);
    const double c = 0.5 * (m.trace() - 1.0);
    return std::atan2(s, c);
  }
  Eigen::EigenSolver<Matrix> es(m, false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    worst = std::max(worst, std::abs(std::arg(es.eigenvalues()(i))));
  return worst;
}

AlgebraElement log_rotation(const Rotation& r) {
  require(r.det_sign() > 0, ErrorCode::ComponentMismatch, "log of an orientation-reversing matrix");
  const Matrix& m = r.matrix();
  const int n = r.dim();
  constexpr double cut = std::numbers::pi - kCutMargin;
  if (n == 1) return AlgebraElement::zero(1);
  if (n == 2) {
    const double theta = std::atan2(m(1, 0), m(0, 0));
    require(std::abs(theta) < cut, ErrorCode::AngleAtCut,
            "rotation angle " + std::to_string(theta) + " at the branch cut");
    return hat2(theta);
  }
  if (n == 3) {
    const Matrix asym = m - m.transpose();
    const double s = asym.norm() / (2.0 * std::numbers::sqrt2);
    const double c = 0.5 * (m.trace() - 1.0);
    const double theta = std::atan2(s, c);
    require(theta < cut, ErrorCode::AngleAtCut,
            "rotation angle " + std::to_string(theta) + " at the branch cut");
    double factor;  // theta / (2 sin theta)
    if (theta < 1e-4) {
      const double t2 = theta * theta;
      factor = 0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0);
    } else {
      factor = theta / (2.0 * std::sin(theta));
    }
    return AlgebraElement(factor * asym);
  }
  require(max_rotation_angle(r) < cut, ErrorCode::AngleAtCut, "rotation angle at the branch cut");
  Matrix l = m.log();
  return AlgebraElement(l);
}

// ---------------------------------------------------------------------------
// algebra operations

double inner_algebra(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_dim(a.dim(), b.dim());
  return (a.matrix().array() * b.matrix().array()).sum();
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_dim(a.dim(), b.dim());
  Matrix c = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  return AlgebraElement(0.5 * (c - c.transpose()), AlgebraElement::Trusted{});
}

AlgebraElement adjoint(const Rotation& g, const AlgebraElement& a) {
  require_same_dim(g.dim(), a.dim());
  return AlgebraElement(g.matrix() * a.matrix() * g.matrix().transpose());
}

AlgebraElement hat2(double omega) {
  Vector c(1);
  c(0) = -omega;
  return AlgebraElement::from_coords(2, c);
}

double vee2(const AlgebraElement& a) {
  require(a.dim() == 2, ErrorCode::DimensionMismatch, "vee2 needs a 2x2 element");
  return a.matrix()(1, 0);
}

AlgebraElement hat3(const Eigen::Vector3d& w) {
  Vector c(3);
  c << w(2), -w(1), w(0);  // (0,1), (0,2), (1,2)
  return AlgebraElement::from_coords(3, c);
}

Eigen::Vector3d vee3(const AlgebraElement& a) {
  require(a.dim() == 3, ErrorCode::DimensionMismatch, "vee3 needs a 3x3 element");
  const Matrix& m = a.matrix();
  return {m(1, 2), m(2, 0), m(0, 1)};
}

Rotation rotation2(double theta) {
  Matrix r(2, 2);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  r << c, -s, s, c;
  return Rotation::adopt(std::move(r));
}

Rotation project_rotation(const Matrix& m) {
  require_square(m, "projection input");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  require(sv.size() > 0 && sv(sv.size() - 1) > 1e-12 * std::max(1.0, sv(0)), ErrorCode::SingularMatrix,
          "cannot project a singular matrix onto O(n)");
  return Rotation::adopt(svd.matrixU() * svd.matrixV().transpose());
}

Rotation reflection(int n) {
  Matrix m = Matrix::Identity(n, n);
  m(0, 0) = -1.0;
  return Rotation::adopt(std::move(m));
}

}  // namespace jetreg
