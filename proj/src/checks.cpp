#include "jetreg/checks.hpp"

#include <algorithm>
#include <cmath>

#include "jetreg/bvp.hpp"
#include "jetreg/distance.hpp"
#include "jetreg/momentum.hpp"
#include "jetreg/random.hpp"

namespace jetreg {

namespace {

class Suite {
 public:
  void at_most(std::string name, double measured, double bound) {
    out_.push_back({std::move(name), measured, bound, "<=", measured <= bound});
  }
  void above(std::string name, double measured, double bound) {
    out_.push_back({std::move(name), measured, bound, ">", measured > bound});
  }
  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::vector<CheckResult> out_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

Vector random_weights(int k, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.1, 2.0);
  Vector l(k);
  for (int i = 0; i < k; ++i) l(i) = uni(rng);
  return l;
}

void algebra_checks(Suite& suite, Rng& rng, int count) {
  double roundtrip = 0.0, ortho = 0.0, ad = 0.0, hat = 0.0, skew = 0.0;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < count; ++i) {
    for (int n = 2; n <= 4; ++n) {
      AlgebraElement w = random_algebra(n, 1.0, rng);
      w *= 3.0 * uni(rng) / std::max(w.norm(), 1e-300);
      const Rotation r = exp_algebra(w);
      roundtrip = std::max(roundtrip, (log_rotation(r) - w).norm());
      ortho = std::max(ortho, r.orthogonality_error());

      const Rotation g = random_rotation(n, rng);
      const AlgebraElement a = random_algebra(n, 1.0, rng);
      const AlgebraElement b = random_algebra(n, 1.0, rng);
      ad = std::max(ad, std::abs(inner_algebra(adjoint(g, a), adjoint(g, b)) - inner_algebra(a, b)));
      skew = std::max(skew, std::abs(inner_algebra(a, bracket(b, a))));
    }
    const Eigen::Vector3d u = random_matrix(3, 1, rng).col(0);
    const Eigen::Vector3d v = random_matrix(3, 1, rng).col(0);
    // With Omega_ij = eps_ijk omega_k the bracket maps to minus the cross product.
    hat = std::max(hat, (bracket(hat3(u), hat3(v)) + hat3(u.cross(v))).norm());
  }
  suite.at_most("exp_log_roundtrip", roundtrip, 1e-9);
  suite.at_most("exp_orthogonality", ortho, 1e-12);
  suite.at_most("ad_invariance", ad, 1e-12);
  suite.at_most("bracket_orthogonality", skew, 1e-12);
  suite.at_most("hat3_bracket_cross_product", hat, 1e-13);
}

void momentum_checks(Suite& suite, Rng& rng, int count) {
  double antisym = 0.0, pair = 0.0, cross = 0.0, lnorm = 0.0, reduction = 0.0;
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  for (int i = 0; i < count; ++i) {
    for (int n = 2; n <= 4; ++n) {
      for (int k = 1; k <= 3; ++k) {
        const Vector l = random_weights(k, rng);
        const Matrix a = random_matrix(n, k, rng);
        const Matrix b = random_matrix(n, k, rng);
        antisym = std::max(antisym, (diamond(a, b, l) + diamond(b, a, l)).norm());
        const auto [lhs, rhs] = diamond_pairing_check(a, b, l, random_algebra(n, 1.0, rng));
        pair = std::max(pair, std::abs(lhs - rhs));
        const Rotation g = random_rotation(n, rng);
        lnorm = std::max(lnorm, rel(norm_L_squared(g * a, l), norm_L_squared(a, l)));
      }
    }
    const Vector l1 = random_weights(1, rng);
    const Eigen::Vector3d a = random_matrix(3, 1, rng).col(0);
    const Eigen::Vector3d b = random_matrix(3, 1, rng).col(0);
    cross = std::max(cross, (vee3(diamond(a, b, l1)) - 0.5 * l1(0) * a.cross(b)).norm());

    const Vector l2 = random_weights(2, rng);
    const Matrix a1 = random_matrix(2, 2, rng);
    const Matrix a2 = random_matrix(2, 2, rng);
    const double theta = angle(rng);
    reduction = std::max(reduction, std::abs(vee2(matching_force(rotation2(theta), a1, a2, l2)) -
                                             theta_rhs(theta, a1, a2, l2)));
  }
  suite.at_most("diamond_antisymmetry", antisym, 1e-13);
  suite.at_most("diamond_pairing", pair, 1e-12);
  suite.at_most("diamond_cross_product_3d", cross, 1e-13);
  suite.at_most("jet_norm_rotation_invariance", lnorm, 1e-12);
  suite.at_most("theta_rhs_reduction_2d", reduction, 1e-13);
}

void energy_checks(Suite& suite, Rng& rng) {
  constexpr int kN = 50;
  double split = 0.0, sym = 0.0, equiv = 0.0, grad = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int n = 2 + i % 2;
    const Vector l = default_weights(1);
    const Curve c1 = random_curve(n, rng);
    const Curve c2 = random_curve(n, rng);
    const JetField j1 = jet_field(c1, 1, kN, l);
    const JetField j2 = jet_field(c2, 1, kN, l);
    const RotationPath path = random_path(n, kN, rng, 0.5);

    const EnergyBreakdown e = discrete_energy(path, j1, j2);
    split = std::max(split, rel(e.total, e.potential + e.kinetic));
    sym = std::max(sym, rel(e.total, discrete_energy(path.inverse(), j2, j1).total));

    const Rotation g1 = random_rotation(n, rng);
    const Rotation g2 = random_rotation(n, rng);
    const RigidTransform t1{g1, random_matrix(n, 1, rng).col(0)};
    const RigidTransform t2{g2, random_matrix(n, 1, rng).col(0)};
    const EnergyBreakdown moved = discrete_energy(path.conjugated(g2, g1.inverse()), jet_field(apply_rigid(t1, c1), 1, kN, l),
                                                  jet_field(apply_rigid(t2, c2), 1, kN, l));
    equiv = std::max(equiv, rel(e.total, moved.total));

    const auto g = energy_gradient(path, j1, j2);
    std::vector<AlgebraElement> sigma;
    for (int m = 0; m <= kN; ++m) sigma.push_back(random_algebra(n, 1.0, rng));
    constexpr double eps = 1e-6;
    const double fd = (discrete_energy(path.retract(sigma, eps), j1, j2).total -
                       discrete_energy(path.retract(sigma, -eps), j1, j2).total) /
                      (2.0 * eps);
    const double an = pairing(g, sigma);
    grad = std::max(grad, std::abs(fd - an) / std::max(std::abs(an), 1e-12));
  }
  suite.at_most("energy_total_is_sum", split, 1e-12);
  suite.at_most("energy_symmetry", sym, 1e-12);
  suite.at_most("energy_rigid_equivalence", equiv, 1e-12);
  suite.at_most("gradient_vs_finite_difference", grad, 1e-5);
}

void distance_checks(Suite& suite, Rng& rng, const CheckConfig& config) {
  DistanceConfig dc;
  dc.intervals = config.intervals;
  if (config.lambda.size() > 0) dc.lambda = config.lambda;
  dc.k = static_cast<int>(dc.weights().size());

  const Vector e1 = Vector::Unit(2, 0);
  {
    DistanceConfig lines = dc;
    lines.k = 1;
    lines.lambda = Vector::Ones(1);
    const auto r = distance(Curve::line(e1, Vector::Zero(2)), Curve::line(2.0 * e1, Vector::Zero(2)), lines);
    suite.at_most("straight_lines_energy", std::abs(r.value - 0.5), 1e-10);
  }

  double self = 0.0, sym = 0.0, rigid = 0.0, ortho = 0.0, stationary = 0.0, agree = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int n = 2 + i % 2;
    const Curve c1 = random_curve(n, rng);
    const Curve c2 = random_curve(n, rng);
    self = std::max(self, distance(c1, c1, dc).value);
    const auto d12 = distance(c1, c2, dc);
    const auto d21 = distance(c2, c1, dc);
    sym = std::max(sym, std::abs(d12.value - d21.value));
    const auto moved = distance(apply_rigid(random_rigid(n, rng), c1), c2, dc);
    rigid = std::max(rigid, std::abs(moved.value - d12.value));
    const JetField j1 = jet_field(c1, dc.k, dc.intervals, dc.weights());
    const JetField j2 = jet_field(c2, dc.k, dc.intervals, dc.weights());
    for (const auto& cp : d12.critical_points) {
      ortho = std::max(ortho, cp.path.max_orthogonality_error());
      stationary = std::max(stationary, gradient_sup_norm(energy_gradient(cp.path, j1, j2)));
    }
    for (const auto* r : {&d12, &d21, &moved}) {
      if (r->shooting_best && r->direct_best)
        agree = std::max(agree, std::abs(*r->shooting_best - *r->direct_best) /
                                    std::max({std::abs(*r->shooting_best), std::abs(*r->direct_best), 1e-300}));
    }
  }
  suite.at_most("distance_self", self, 1e-10);
  suite.at_most("distance_symmetry", sym, 1e-8);
  suite.at_most("distance_rigid_invariance", rigid, 1e-8);
  suite.at_most("integrator_orthogonality", ortho, 1e-10);
  suite.at_most("critical_point_gradient", stationary, 1e-5);
  suite.at_most("oracle_agreement", agree, 1e-6);

  DistanceConfig lc = dc;
  lc.k = 1;
  lc.lambda = Vector::Constant(1, 10.0);
  const auto line_circle = distance(Curve::line(-e1, Vector::Zero(2)), Curve::circle(1.0), lc);
  suite.above("line_circle_positive", line_circle.value, 0.0);
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckConfig& config) {
  require(config.instances >= 1, ErrorCode::InvalidArgument, "need at least one instance");
  if (config.lambda.size() > 0) validate_weights(config.lambda);
  require(config.intervals >= 16, ErrorCode::GridTooCoarse, "checks need at least 16 grid intervals");
  Rng rng(config.seed);
  Suite suite;
  algebra_checks(suite, rng, config.instances);
  momentum_checks(suite, rng, config.instances);
  energy_checks(suite, rng);
  distance_checks(suite, rng, config);
  return suite.take();
}

}  // namespace jetreg
