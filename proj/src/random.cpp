#include "jetreg/random.hpp"

#include <cmath>
#include <numbers>

namespace jetreg {

Matrix random_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

AlgebraElement random_algebra(int n, double scale, Rng& rng) {
  return AlgebraElement::from_coords(n, scale * random_matrix(algebra_dim(n), 1, rng).col(0));
}

Rotation random_rotation(int n, Rng& rng) {
  const Eigen::HouseholderQR<Matrix> qr(random_matrix(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return project_rotation(q);
}

RigidTransform random_rigid(int n, Rng& rng) {
  return {random_rotation(n, rng), random_matrix(n, 1, rng).col(0)};
}

RotationPath random_path(int n, int intervals, Rng& rng, double amplitude) {
  const Rotation g0 = random_rotation(n, rng);
  std::vector<AlgebraElement> modes;
  for (int j = 0; j < 3; ++j) modes.push_back(random_algebra(n, amplitude / (j + 1), rng));
  std::vector<Rotation> nodes;
  nodes.reserve(static_cast<std::size_t>(intervals) + 1);
  for (int m = 0; m <= intervals; ++m) {
    const double s = static_cast<double>(m) / intervals;
    AlgebraElement w = AlgebraElement::zero(n);
    for (int j = 0; j < 3; ++j) w += std::sin(std::numbers::pi * (j + 1) * s) * modes[static_cast<std::size_t>(j)];
    nodes.push_back(g0 * exp_algebra(w));
  }
  return RotationPath(std::move(nodes));
}

Curve random_curve(int n, Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Curve c = [&] {
    switch (kind(rng)) {
      case 0: {
        const Vector a = random_matrix(n, 1, rng).col(0);
        const double v = 0.5 + uni(rng);
        const double eps = 0.5 * uni(rng) * v / (2.0 * std::numbers::pi);
        return Curve::line(a, Vector::Zero(n), SpeedProfile::sinusoidal(v, eps));
      }
      case 1:
        return Curve::circle(0.3 + uni(rng), n);
      default:
        return Curve::graph(HeightProfile::gaussian(uni(rng) - 0.5, 0.2 + 0.6 * uni(rng), 0.1 + 0.2 * uni(rng)), n);
    }
  }();
  return apply_rigid(random_rigid(n, rng), c);
}

}  // namespace jetreg
