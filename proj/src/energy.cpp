#include "jetreg/energy.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "jetreg/momentum.hpp"

namespace jetreg {

RotationPath::RotationPath(std::vector<Rotation> nodes) : nodes_(std::move(nodes)) {
  require(nodes_.size() >= 2, ErrorCode::GridTooCoarse, "rotation path needs at least two nodes");
  const int n = nodes_.front().dim();
  const int sign = nodes_.front().det_sign();
  for (const auto& g : nodes_) {
    require(g.dim() == n, ErrorCode::DimensionMismatch, "rotation path mixes dimensions");
    require(g.det_sign() == sign, ErrorCode::ComponentMismatch, "rotation path changes component");
  }
}

RotationPath RotationPath::constant(const Rotation& g, int intervals) {
  return RotationPath(std::vector<Rotation>(static_cast<std::size_t>(intervals) + 1, g));
}

RotationPath RotationPath::inverse() const {
  std::vector<Rotation> out;
  out.reserve(nodes_.size());
  for (const auto& g : nodes_) out.push_back(g.inverse());
  return RotationPath(std::move(out));
}

RotationPath RotationPath::retract(const std::vector<AlgebraElement>& sigma, double step) const {
  require(sigma.size() == nodes_.size(), ErrorCode::GridMismatch, "retraction direction has wrong length");
  std::vector<Rotation> out;
  out.reserve(nodes_.size());
  for (std::size_t m = 0; m < nodes_.size(); ++m) out.push_back(nodes_[m] * exp_algebra(step * sigma[m]));
  return RotationPath(std::move(out));
}

RotationPath RotationPath::conjugated(const Rotation& left, const Rotation& right) const {
  std::vector<Rotation> out;
  out.reserve(nodes_.size());
  for (const auto& g : nodes_) out.push_back(left * g * right);
  return RotationPath(std::move(out));
}

double RotationPath::max_orthogonality_error() const {
  double worst = 0.0;
  for (const auto& g : nodes_) worst = std::max(worst, g.orthogonality_error());
  return worst;
}

double sup_distance(const RotationPath& a, const RotationPath& b) {
  require(a.intervals() == b.intervals(), ErrorCode::GridMismatch, "paths on different grids");
  double worst = 0.0;
  for (int m = 0; m <= a.intervals(); ++m) worst = std::max(worst, (a[m].matrix() - b[m].matrix()).norm());
  return worst;
}

std::vector<double> unwrap_angles(const RotationPath& path) {
  require(path.dim() == 2 && path.det_sign() > 0, ErrorCode::DimensionMismatch, "angle lift needs an SO(2) path");
  std::vector<double> theta(static_cast<std::size_t>(path.intervals()) + 1);
  theta[0] = std::atan2(path[0].matrix()(1, 0), path[0].matrix()(0, 0));
  for (int m = 0; m < path.intervals(); ++m) {
    const Matrix rel = path[m].matrix().transpose() * path[m + 1].matrix();
    theta[static_cast<std::size_t>(m) + 1] = theta[static_cast<std::size_t>(m)] + std::atan2(rel(1, 0), rel(0, 0));
  }
  return theta;
}

int winding_number(const RotationPath& path) {
  const auto theta = unwrap_angles(path);
  return static_cast<int>(std::lround((theta.back() - theta.front()) / (2.0 * std::numbers::pi)));
}

namespace {

void check_compatible(const RotationPath& path, const JetField& j1, const JetField& j2) {
  require(j1.intervals() == path.intervals() && j2.intervals() == path.intervals(), ErrorCode::GridMismatch,
          "path has " + std::to_string(path.intervals()) + " intervals, jets have " + std::to_string(j1.intervals()) +
              " and " + std::to_string(j2.intervals()));
  require(j1.dim() == path.dim() && j2.dim() == path.dim(), ErrorCode::DimensionMismatch,
          "path and jet dimensions differ");
  require(j1.order() == j2.order(), ErrorCode::DimensionMismatch, "jet fields have different orders");
  require(j1.weights() == j2.weights(), ErrorCode::InvalidArgument, "jet fields have different weights");
}

double trapezoid_weight(int m, int intervals) { return (m == 0 || m == intervals) ? 0.5 : 1.0; }

}  // namespace

EnergyBreakdown discrete_energy(const RotationPath& path, const JetField& j1, const JetField& j2,
                                const EnergyOptions& opts) {
  check_compatible(path, j1, j2);
  const int intervals = path.intervals();
  const double h = j1.step();
  const Vector& lambda = j1.weights();

  EnergyBreakdown out;
  out.residuals.resize(static_cast<std::size_t>(intervals) + 1);
  double potential = 0.0;
  for (int m = 0; m <= intervals; ++m) {
    const Matrix q = path[m] * j1.node(m) - j2.node(m);
    const double r = norm_L_squared(q, lambda);
    out.residuals[static_cast<std::size_t>(m)] = r;
    potential += trapezoid_weight(m, intervals) * r;
  }
  out.potential = 0.5 * potential * h;

  double kinetic = 0.0;
  for (int m = 0; m < intervals; ++m) {
    if (opts.kinetic == KineticForm::Log) {
      const Rotation rel = path[m].inverse() * path[m + 1];
      kinetic += log_rotation(rel).matrix().squaredNorm();
    } else {
      kinetic += (path[m + 1].matrix() - path[m].matrix()).squaredNorm();
    }
  }
  out.kinetic = 0.5 * kinetic / h;
  out.total = out.potential + out.kinetic;
  return out;
}

std::vector<AlgebraElement> energy_gradient(const RotationPath& path, const JetField& j1, const JetField& j2,
                                            const EnergyOptions& opts) {
  check_compatible(path, j1, j2);
  const int intervals = path.intervals();
  const double h = j1.step();
  const Vector& lambda = j1.weights();

  std::vector<AlgebraElement> grad;
  grad.reserve(static_cast<std::size_t>(intervals) + 1);
  for (int m = 0; m <= intervals; ++m)
    grad.push_back((trapezoid_weight(m, intervals) * h) * matching_force(path[m], j1.node(m), j2.node(m), lambda));

  // Kinetic term: right-perturbing g_{m+1} moves xi_m = log(g_m^T g_{m+1}) by
  // +sigma_{m+1} and left-perturbing g_m by -sigma_m, to first order in the
  // pairing with xi_m.  The chord form pairs with skew(g_m^T g_{m+1}) instead.
  for (int m = 0; m < intervals; ++m) {
    const Rotation rel = path[m].inverse() * path[m + 1];
    const AlgebraElement xi = opts.kinetic == KineticForm::Log ? log_rotation(rel) : AlgebraElement(rel.matrix());
    const AlgebraElement scaled = (1.0 / h) * xi;
    grad[static_cast<std::size_t>(m)] -= scaled;
    grad[static_cast<std::size_t>(m) + 1] += scaled;
  }
  return grad;
}

double gradient_sup_norm(const std::vector<AlgebraElement>& grad) {
  double worst = 0.0;
  for (const auto& g : grad) worst = std::max(worst, g.norm());
  return worst;
}

double pairing(const std::vector<AlgebraElement>& a, const std::vector<AlgebraElement>& b) {
  require(a.size() == b.size(), ErrorCode::GridMismatch, "pairing of fields with different lengths");
  double acc = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m) acc += inner_algebra(a[m], b[m]);
  return acc;
}

}  // namespace jetreg
