#include "jetreg/momentum.hpp"

#include "jetreg/jets.hpp"

namespace jetreg {

AlgebraElement diamond(const Matrix& a, const Matrix& b, const Vector& lambda) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimensionMismatch, "diamond: jet shapes differ");
  require(lambda.size() == a.cols(), ErrorCode::DimensionMismatch, "diamond: weights do not match jet order");
  // AlgebraElement keeps the antisymmetric part, which is exactly (ALB^T - BLA^T)/2.
  return AlgebraElement(a * lambda.asDiagonal() * b.transpose());
}

double dual_pairing(const AlgebraElement& m, const AlgebraElement& omega) {
  require(m.dim() == omega.dim(), ErrorCode::DimensionMismatch, "pairing: dimensions differ");
  return -inner_algebra(m, omega);
}

std::pair<double, double> diamond_pairing_check(const Matrix& a, const Matrix& b, const Vector& lambda,
                                                const AlgebraElement& omega) {
  require(omega.dim() == a.rows(), ErrorCode::DimensionMismatch, "pairing: algebra and jet dimensions differ");
  const double lhs = dual_pairing(diamond(a, b, lambda), omega);
  const double rhs = inner_L(b, omega.matrix() * a, lambda);
  return {lhs, rhs};
}

AlgebraElement matching_force(const Rotation& g, const Matrix& a1, const Matrix& a2, const Vector& lambda) {
  return diamond(a1, g.matrix().transpose() * a2, lambda);
}

}  // namespace jetreg
