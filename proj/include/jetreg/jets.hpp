#pragma once

// (1,k)-jet fields of curves on the uniform grid s_m = m / N, and the
// weighted inner product <A, B>_L = tr(L A^T B) on the jet space of n x k
// matrices.

#include <memory>
#include <vector>

#include "jetreg/curves.hpp"
#include "jetreg/liegroup.hpp"

namespace jetreg {

/// Highest jet order supported for sampled curves.
inline constexpr int kMaxSampledOrder = 4;

/// lambda = (1, 0, ..., 0)
Vector default_weights(int k);
/// Throws InvalidArgument unless lambda_1 > 0 and lambda_i >= 0.
void validate_weights(const Vector& lambda);

class JetField {
 public:
  JetField() = default;
  JetField(std::vector<Matrix> nodes, Vector lambda, std::shared_ptr<const Curve> exact_source = nullptr);

  int dim() const { return static_cast<int>(nodes_.front().rows()); }
  int order() const { return static_cast<int>(nodes_.front().cols()); }
  int intervals() const { return static_cast<int>(nodes_.size()) - 1; }
  double step() const { return 1.0 / intervals(); }
  const Vector& weights() const { return lambda_; }
  const Matrix& node(int m) const { return nodes_[static_cast<std::size_t>(m)]; }
  const std::vector<Matrix>& nodes() const { return nodes_; }

  /// Jet at an arbitrary s in [0, 1]: exact for analytic sources, otherwise
  /// linear interpolation between grid nodes.
  Matrix at(double s) const;
  bool has_exact_source() const { return source_ != nullptr; }

  /// Same nodes, different weights.
  JetField with_weights(Vector lambda) const;

 private:
  std::vector<Matrix> nodes_;
  Vector lambda_;
  std::shared_ptr<const Curve> source_;
};

/// n x k matrix whose column i is the exact i-th derivative of an analytic curve.
Matrix analytic_jet(const Curve& c, double s, int k);

/// Analytic curves use exact derivatives; sampled curves use second-order
/// finite differences (central inside, one-sided at the ends).
JetField jet_field(const Curve& c, int k, int intervals, const Vector& lambda);

double inner_L(const Matrix& a, const Matrix& b, const Vector& lambda);
double norm_L_squared(const Matrix& a, const Vector& lambda);
/// A -> A L
Matrix flat(const Matrix& a, const Vector& lambda);

/// Finite-difference weights for the `order`-th derivative at offset 0 using
/// the given integer stencil offsets (unit spacing).
std::vector<double> fd_weights(const std::vector<int>& offsets, int order);

}  // namespace jetreg
