#include "jetreg/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include <Eigen/SVD>

#include "jetreg/momentum.hpp"
#include "parallel.hpp"

namespace jetreg {

namespace {

constexpr int kProjectEvery = 64;

struct JetPair {
  Matrix a1;
  Matrix a2;
};

class JetLookup {
 public:
  JetLookup(const ShootingProblem& p, int steps) : p_(p), steps_(steps), on_grid_(steps == p.intervals()) {}

  JetPair operator()(int m) const {
    if (on_grid_) return {p_.j1.node(m), p_.j2.node(m)};
    return at(static_cast<double>(m) / steps_);
  }
  JetPair at(double s) const { return {p_.j1.at(s), p_.j2.at(s)}; }

 private:
  const ShootingProblem& p_;
  int steps_;
  bool on_grid_;
};

IvpSolution integrate_midpoint(const Rotation& g0, const ShootingProblem& p, int steps) {
  const double h = 1.0 / steps;
  const Vector& lambda = p.j1.weights();
  const JetLookup jets(p, steps);
  const int n = p.dim();

  std::vector<Rotation> g;
  g.reserve(static_cast<std::size_t>(steps) + 1);
  g.push_back(g0);
  std::vector<AlgebraElement> omega(static_cast<std::size_t>(steps) + 1, AlgebraElement::zero(n));

  AlgebraElement half = AlgebraElement::zero(n);  // Omega_{m-1/2}
  for (int m = 0; m < steps; ++m) {
    const JetPair a = jets(m);
    const double w = m == 0 ? 0.5 : 1.0;
    AlgebraElement next = half + (h * w) * matching_force(g.back(), a.a1, a.a2, lambda);
    if (m > 0) omega[static_cast<std::size_t>(m)] = 0.5 * (half + next);
    Rotation gn = g.back() * exp_algebra(h * next);
    if ((m + 1) % kProjectEvery == 0) gn = project_rotation(gn.matrix());
    g.push_back(std::move(gn));
    half = std::move(next);
  }
  const JetPair a = jets(steps);
  omega.back() = half + (0.5 * h) * matching_force(g.back(), a.a1, a.a2, lambda);
  return {RotationPath(std::move(g)), std::move(omega)};
}

/// u' for g = g_n exp(u) with g^{-1} g' = omega, truncated after the ad^2 term.
AlgebraElement dexpinv(const AlgebraElement& u, const AlgebraElement& omega) {
  const AlgebraElement b1 = bracket(u, omega);
  return omega + 0.5 * b1 + (1.0 / 12.0) * bracket(u, b1);
}

IvpSolution integrate_rkmk4(const Rotation& g0, const ShootingProblem& p, int steps) {
  const double h = 1.0 / steps;
  const Vector& lambda = p.j1.weights();
  const JetLookup jets(p, steps);
  const int n = p.dim();

  std::vector<Rotation> g;
  g.reserve(static_cast<std::size_t>(steps) + 1);
  g.push_back(g0);
  std::vector<AlgebraElement> omega;
  omega.reserve(static_cast<std::size_t>(steps) + 1);
  omega.push_back(AlgebraElement::zero(n));

  for (int m = 0; m < steps; ++m) {
    const double s = m * h;
    const Rotation& gm = g.back();
    const AlgebraElement om = omega.back();
    const JetPair a0 = jets(m);
    const JetPair ah = jets.at(s + 0.5 * h);
    const JetPair a1 = jets(m + 1);

    const AlgebraElement k1w = matching_force(gm, a0.a1, a0.a2, lambda);
    const AlgebraElement& k1u = om;

    const AlgebraElement u2 = (0.5 * h) * k1u;
    const AlgebraElement w2 = om + (0.5 * h) * k1w;
    const AlgebraElement k2w = matching_force(gm * exp_algebra(u2), ah.a1, ah.a2, lambda);
    const AlgebraElement k2u = dexpinv(u2, w2);

    const AlgebraElement u3 = (0.5 * h) * k2u;
    const AlgebraElement w3 = om + (0.5 * h) * k2w;
    const AlgebraElement k3w = matching_force(gm * exp_algebra(u3), ah.a1, ah.a2, lambda);
    const AlgebraElement k3u = dexpinv(u3, w3);

    const AlgebraElement u4 = h * k3u;
    const AlgebraElement w4 = om + h * k3w;
    const AlgebraElement k4w = matching_force(gm * exp_algebra(u4), a1.a1, a1.a2, lambda);
    const AlgebraElement k4u = dexpinv(u4, w4);

    const AlgebraElement du = (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
    const AlgebraElement dw = (h / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    Rotation gn = gm * exp_algebra(du);
    if ((m + 1) % kProjectEvery == 0) gn = project_rotation(gn.matrix());
    g.push_back(std::move(gn));
    omega.push_back(om + dw);
  }
  return {RotationPath(std::move(g)), std::move(omega)};
}

double finite_or_inf(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

/// Damped Newton on a square residual map of the chart coordinate around a
/// moving base point.  `advance(base, delta)` re-centres the chart.
template <class Base, class Residual, class Advance>
int newton(Base& base, Vector& r, double& rnorm, std::vector<double>& history, const ShootingOptions& opts,
           Residual residual, Advance advance) {
  const auto dim = r.size();
  int iterations = 0;
  while (rnorm > opts.tol) {
    if (iterations >= opts.max_iter)
      fail(ErrorCode::NoConvergence, "no convergence after " + std::to_string(opts.max_iter) +
                                         " Newton iterations (|r| = " + std::to_string(rnorm) + ")");
    Matrix jac(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      Vector e = Vector::Zero(dim);
      e(i) = opts.fd_step;
      const Vector rp = residual(advance(base, e)).first;
      const Vector rm = residual(advance(base, Vector(-e))).first;
      jac.col(i) = (rp - rm) / (2.0 * opts.fd_step);
    }
    Eigen::JacobiSVD<Matrix> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cond = sv(dim - 1) > 0.0 ? sv(0) / sv(dim - 1) : std::numeric_limits<double>::infinity();
    if (!(cond <= opts.max_condition))
      fail(ErrorCode::SingularJacobian, "shooting Jacobian condition estimate " + std::to_string(cond));
    const Vector delta = svd.solve(-r);

    double t = 1.0;
    bool accepted = false;
    for (int k = 0; k <= opts.max_halvings; ++k, t *= 0.5) {
      Base trial = advance(base, Vector(t * delta));
      auto [rt, nt] = residual(trial);
      if (finite_or_inf(nt) < rnorm) {
        base = std::move(trial);
        r = std::move(rt);
        rnorm = nt;
        accepted = true;
        break;
      }
    }
    ++iterations;
    history.push_back(rnorm);
    if (!accepted) fail(ErrorCode::NoConvergence, "damped Newton step failed to reduce |Omega(1)|");
  }
  return iterations;
}

}  // namespace

ShootingProblem::ShootingProblem(JetField first, JetField second) : j1(std::move(first)), j2(std::move(second)) {
  require(j1.intervals() == j2.intervals(), ErrorCode::GridMismatch, "jet fields on different grids");
  require(j1.dim() == j2.dim(), ErrorCode::DimensionMismatch, "jet fields of different dimension");
  require(j1.order() == j2.order() && j1.weights() == j2.weights(), ErrorCode::InvalidArgument,
          "jet fields must share order and weights");
  require(j1.intervals() >= 16, ErrorCode::GridTooCoarse, "shooting needs at least 16 grid intervals");
}

StateDerivative rhs(double s, const Rotation& g, const AlgebraElement& omega, const JetField& j1,
                    const JetField& j2) {
  require(g.dim() == omega.dim() && g.dim() == j1.dim() && j1.dim() == j2.dim(), ErrorCode::DimensionMismatch,
          "rhs: inconsistent dimensions");
  return {g.matrix() * omega.matrix(), matching_force(g, j1.at(s), j2.at(s), j1.weights())};
}

IvpSolution integrate_ivp(const Rotation& g0, const ShootingProblem& problem, int steps, Integrator scheme) {
  if (steps == 0) steps = problem.intervals();
  require(steps >= 16, ErrorCode::GridTooCoarse, "integration needs at least 16 steps");
  require(g0.dim() == problem.dim(), ErrorCode::DimensionMismatch, "initial rotation has wrong dimension");
  return scheme == Integrator::Midpoint ? integrate_midpoint(g0, problem, steps) : integrate_rkmk4(g0, problem, steps);
}

CriticalPoint solve_shooting(const ShootingProblem& problem, const Rotation& start, const ShootingOptions& opts,
                             int start_index) {
  require(opts.tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const int n = problem.dim();
  require(start.dim() == n, ErrorCode::DimensionMismatch, "start rotation has wrong dimension");

  auto residual = [&](const Rotation& g0) {
    IvpSolution sol = integrate_ivp(g0, problem);
    const AlgebraElement& end = sol.omega.back();
    std::pair<Vector, double> out{end.coords(), end.norm()};
    return out;
  };
  auto advance = [n](const Rotation& base, const Vector& zeta) {
    return base * exp_algebra(AlgebraElement::from_coords(n, zeta));
  };

  Rotation base = start;
  auto [r, rnorm] = residual(base);
  std::vector<double> history{rnorm};
  const int iterations = newton(base, r, rnorm, history, opts, residual, advance);

  IvpSolution sol = integrate_ivp(base, problem);
  CriticalPoint cp;
  cp.energy = discrete_energy(sol.path, problem.j1, problem.j2);
  cp.path = std::move(sol.path);
  cp.omega = std::move(sol.omega);
  cp.residual = cp.omega.back().norm();
  cp.iterations = iterations;
  cp.start_index = start_index;
  cp.residual_history = std::move(history);
  return cp;
}

std::vector<Rotation> default_starts(int n, int count, bool include_reflections) {
  require(count >= 1, ErrorCode::InvalidArgument, "need at least one start");
  std::vector<Rotation> starts;
  starts.reserve(static_cast<std::size_t>(count) * (include_reflections ? 2 : 1));
  if (n == 1) {
    starts.push_back(Rotation::identity(1));
  } else if (n == 2) {
    for (int j = 0; j < count; ++j) starts.push_back(rotation2(2.0 * std::numbers::pi * j / count));
  } else {
    starts.push_back(Rotation::identity(n));
    const int d = algebra_dim(n);
    std::mt19937_64 rng(0x5eed);
    std::normal_distribution<double> normal;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int j = 1; j < count; ++j) {
      Vector dir(d);
      if (n == 3) {
        const double z = 1.0 - 2.0 * (j - 0.5) / (count - 1);
        const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
        dir << rad * std::cos(golden * j), rad * std::sin(golden * j), z;
      } else {
        for (int i = 0; i < d; ++i) dir(i) = normal(rng);
      }
      const double angle = std::numbers::pi * (j - 0.5) / (count - 1);
      // Coordinates are matrix entries, so a unit coordinate vector has rotation angle |c|.
      starts.push_back(exp_algebra(AlgebraElement::from_coords(n, angle * dir.normalized())));
    }
  }
  if (include_reflections) {
    const std::size_t base = starts.size();
    for (std::size_t i = 0; i < base; ++i) starts.push_back(reflection(n) * starts[i]);
  }
  return starts;
}

MultistartReport solve_bvp_multistart(const ShootingProblem& problem, const std::vector<Rotation>& starts,
                                      const ShootingOptions& opts, double dedup_distance) {
  require(!starts.empty(), ErrorCode::InvalidArgument, "multistart needs at least one start");
  auto results = detail::parallel_map(starts.size(), [&](std::size_t i) -> std::optional<CriticalPoint> {
    try {
      return solve_shooting(problem, starts[i], opts, static_cast<int>(i));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::SingularJacobian ||
          e.code() == ErrorCode::AngleAtCut)
        return std::nullopt;
      throw;
    }
  });

  MultistartReport report;
  std::vector<CriticalPoint> found;
  for (auto& r : results) {
    if (r) found.push_back(std::move(*r));
    else ++report.failed_starts;
  }
  if (found.empty())
    fail(ErrorCode::AllStartsFailed, "all " + std::to_string(starts.size()) + " shooting starts failed");
  std::stable_sort(found.begin(), found.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.energy.total != b.energy.total) return a.energy.total < b.energy.total;
    return a.start_index < b.start_index;
  });
  for (auto& cp : found) {
    const bool duplicate = std::any_of(report.points.begin(), report.points.end(), [&](const CriticalPoint& kept) {
      return kept.path.det_sign() == cp.path.det_sign() && sup_distance(kept.path, cp.path) < dedup_distance;
    });
    if (!duplicate) report.points.push_back(std::move(cp));
  }
  return report;
}

double theta_rhs(double theta, const Matrix& a1, const Matrix& a2, const Vector& lambda) {
  require(a1.rows() == 2 && a2.rows() == 2, ErrorCode::DimensionMismatch, "theta_rhs needs planar jets");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a1.cols(); ++i) {
    // u = R(-theta) c2^(i)
    const double u0 = c * a2(0, i) + s * a2(1, i);
    const double u1 = -s * a2(0, i) + c * a2(1, i);
    acc += 0.5 * lambda(i) * (u0 * a1(1, i) - u1 * a1(0, i));
  }
  return acc;
}

CriticalPoint solve_theta_2d(const ShootingProblem& problem, double theta0, const ShootingOptions& opts) {
  require(problem.dim() == 2, ErrorCode::DimensionMismatch, "angle shooting needs n = 2");
  const int steps = problem.intervals();
  const double h = 1.0 / steps;
  const Vector& lambda = problem.j1.weights();
  auto force = [&](int m, double theta) { return theta_rhs(theta, problem.j1.node(m), problem.j2.node(m), lambda); };

  // Same staggered scheme as the matrix integrator, in the angle coordinate.
  struct Trajectory {
    std::vector<double> theta;
    std::vector<double> rate;  // theta' at nodes
  };
  auto integrate = [&](double t0) {
    Trajectory tr;
    tr.theta.resize(static_cast<std::size_t>(steps) + 1);
    tr.rate.assign(static_cast<std::size_t>(steps) + 1, 0.0);
    tr.theta[0] = t0;
    double half = 0.0;
    for (int m = 0; m < steps; ++m) {
      const double next = half + h * (m == 0 ? 0.5 : 1.0) * force(m, tr.theta[static_cast<std::size_t>(m)]);
      if (m > 0) tr.rate[static_cast<std::size_t>(m)] = 0.5 * (half + next);
      tr.theta[static_cast<std::size_t>(m) + 1] = tr.theta[static_cast<std::size_t>(m)] + h * next;
      half = next;
    }
    tr.rate.back() = half + 0.5 * h * force(steps, tr.theta.back());
    return tr;
  };
  auto residual = [&](double t0) {
    const double end = integrate(t0).rate.back();
    Vector r(1);
    r(0) = end;
    return std::pair<Vector, double>{r, std::abs(end)};
  };
  auto advance = [](double base, const Vector& delta) { return base + delta(0); };

  double base = theta0;
  auto [r, rnorm] = residual(base);
  std::vector<double> history{rnorm};
  const int iterations = newton(base, r, rnorm, history, opts, residual, advance);

  const Trajectory tr = integrate(base);
  std::vector<Rotation> nodes;
  std::vector<AlgebraElement> omega;
  for (int m = 0; m <= steps; ++m) {
    nodes.push_back(rotation2(tr.theta[static_cast<std::size_t>(m)]));
    omega.push_back(hat2(tr.rate[static_cast<std::size_t>(m)]));
  }
  CriticalPoint cp;
  cp.path = RotationPath(std::move(nodes));
  cp.omega = std::move(omega);
  cp.energy = discrete_energy(cp.path, problem.j1, problem.j2);
  cp.residual = cp.omega.back().norm();
  cp.iterations = iterations;
  cp.residual_history = std::move(history);
  return cp;
}

}  // namespace jetreg
