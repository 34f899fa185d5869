#include "jetreg/jets.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace jetreg {

Vector default_weights(int k) {
  require(k >= 1, ErrorCode::InvalidArgument, "jet order must be >= 1");
  Vector l = Vector::Zero(k);
  l(0) = 1.0;
  return l;
}

void validate_weights(const Vector& lambda) {
  require(lambda.size() >= 1, ErrorCode::InvalidArgument, "weight vector is empty");
  require(lambda(0) > 0.0, ErrorCode::InvalidArgument,
          "lambda_1 must be positive (a zero first-order weight does not give a distance)");
  for (Eigen::Index i = 1; i < lambda.size(); ++i)
    require(lambda(i) >= 0.0, ErrorCode::InvalidArgument, "higher-order weights must be non-negative");
}

JetField::JetField(std::vector<Matrix> nodes, Vector lambda, std::shared_ptr<const Curve> exact_source)
    : nodes_(std::move(nodes)), lambda_(std::move(lambda)), source_(std::move(exact_source)) {
  require(nodes_.size() >= 2, ErrorCode::GridTooCoarse, "jet field needs at least two nodes");
  for (const auto& a : nodes_)
    require(a.rows() == nodes_.front().rows() && a.cols() == nodes_.front().cols(), ErrorCode::DimensionMismatch,
            "jet nodes differ in shape");
  require(lambda_.size() == order(), ErrorCode::DimensionMismatch, "weights do not match jet order");
  validate_weights(lambda_);
}

Matrix JetField::at(double s) const {
  if (source_) return analytic_jet(*source_, s, order());
  const int n_int = intervals();
  const double x = std::clamp(s, 0.0, 1.0) * n_int;
  const int m = std::min(static_cast<int>(std::floor(x)), n_int - 1);
  const double t = x - m;
  if (t == 0.0) return node(m);
  return (1.0 - t) * node(m) + t * node(m + 1);
}

JetField JetField::with_weights(Vector lambda) const { return JetField(nodes_, std::move(lambda), source_); }

Matrix analytic_jet(const Curve& c, double s, int k) {
  Matrix a(c.dim(), k);
  for (int i = 0; i < k; ++i) a.col(i) = c.derivative(s, i + 1);
  return a;
}

std::vector<double> fd_weights(const std::vector<int>& offsets, int order) {
  // Fornberg's recursion for weights at z = 0.
  const int np = static_cast<int>(offsets.size());
  std::vector<std::vector<double>> c(static_cast<std::size_t>(np), std::vector<double>(order + 1, 0.0));
  auto x = [&](int i) { return static_cast<double>(offsets[static_cast<std::size_t>(i)]); };
  double c1 = 1.0;
  double c4 = x(0);
  c[0][0] = 1.0;
  for (int i = 1; i < np; ++i) {
    const int mn = std::min(i, order);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x(i);
    for (int j = 0; j < i; ++j) {
      const double c3 = x(i) - x(j);
      c2 *= c3;
      auto& ci = c[static_cast<std::size_t>(i)];
      auto& cim = c[static_cast<std::size_t>(i - 1)];
      auto& cj = c[static_cast<std::size_t>(j)];
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) ci[k] = c1 * (k * cim[k - 1] - c5 * cim[k]) / c2;
        ci[0] = -c1 * c5 * cim[0] / c2;
      }
      for (int k = mn; k >= 1; --k) cj[k] = (c4 * cj[k] - k * cj[k - 1]) / c3;
      cj[0] = c4 * cj[0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(static_cast<std::size_t>(np));
  for (int i = 0; i < np; ++i) w[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)][order];
  return w;
}

namespace {

std::vector<int> stencil(int m, int order, int intervals) {
  const int half = (order + 1) / 2;
  std::vector<int> offs;
  if (m - half >= 0 && m + half <= intervals) {
    for (int o = -half; o <= half; ++o) offs.push_back(o);
    return offs;
  }
  const int width = order + 2;
  const int start = std::clamp(m - half, 0, intervals + 1 - width);
  for (int i = 0; i < width; ++i) offs.push_back(start + i - m);
  return offs;
}

}  // namespace

JetField jet_field(const Curve& c, int k, int intervals, const Vector& lambda) {
  require(k >= 1, ErrorCode::UnsupportedOrder, "jet order must be >= 1");
  require(lambda.size() == k, ErrorCode::DimensionMismatch,
          "expected " + std::to_string(k) + " weights, got " + std::to_string(lambda.size()));
  validate_weights(lambda);
  require(intervals >= 1, ErrorCode::GridTooCoarse, "grid needs at least one interval");

  std::vector<Matrix> nodes;
  nodes.reserve(static_cast<std::size_t>(intervals) + 1);
  if (c.is_analytic()) {
    for (int m = 0; m <= intervals; ++m)
      nodes.push_back(analytic_jet(c, static_cast<double>(m) / intervals, k));
    return JetField(std::move(nodes), lambda, std::make_shared<const Curve>(c));
  }

  require(k <= kMaxSampledOrder, ErrorCode::UnsupportedOrder,
          "sampled curves support jets up to order " + std::to_string(kMaxSampledOrder));
  require(intervals >= k + 1, ErrorCode::GridTooCoarse,
          "order-" + std::to_string(k) + " jets need at least " + std::to_string(k + 2) + " nodes");
  const Matrix values = c.sample_values(intervals);
  const double h = 1.0 / intervals;
  for (int m = 0; m <= intervals; ++m) {
    Matrix a = Matrix::Zero(c.dim(), k);
    for (int d = 1; d <= k; ++d) {
      const auto offs = stencil(m, d, intervals);
      const auto w = fd_weights(offs, d);
      for (std::size_t i = 0; i < offs.size(); ++i) a.col(d - 1) += w[i] * values.row(m + offs[i]).transpose();
      a.col(d - 1) /= std::pow(h, d);
    }
    nodes.push_back(std::move(a));
  }
  return JetField(std::move(nodes), lambda);
}

double inner_L(const Matrix& a, const Matrix& b, const Vector& lambda) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::DimensionMismatch, "jet shapes differ");
  require(lambda.size() == a.cols(), ErrorCode::DimensionMismatch, "weights do not match jet order");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) acc += lambda(i) * a.col(i).dot(b.col(i));
  return acc;
}

double norm_L_squared(const Matrix& a, const Vector& lambda) { return inner_L(a, a, lambda); }

Matrix flat(const Matrix& a, const Vector& lambda) {
  require(lambda.size() == a.cols(), ErrorCode::DimensionMismatch, "weights do not match jet order");
  return a * lambda.asDiagonal();
}

}  // namespace jetreg
