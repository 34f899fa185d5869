#include "jetreg/distance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Sparse>

#include "parallel.hpp"

namespace jetreg {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Coordinates of the gradient, scaled so that dE = g . sigma in coordinates
/// (each coordinate appears twice in the skew matrix).
Vector flatten(const std::vector<AlgebraElement>& grad) {
  const int d = algebra_dim(grad.front().dim());
  Vector out(static_cast<Eigen::Index>(grad.size()) * d);
  for (std::size_t m = 0; m < grad.size(); ++m)
    out.segment(static_cast<Eigen::Index>(m) * d, d) = 2.0 * grad[m].coords();
  return out;
}

std::vector<AlgebraElement> unflatten(const Vector& v, int n) {
  const int d = algebra_dim(n);
  std::vector<AlgebraElement> out;
  out.reserve(static_cast<std::size_t>(v.size() / d));
  for (Eigen::Index m = 0; m < v.size() / d; ++m) out.push_back(AlgebraElement::from_coords(n, v.segment(m * d, d)));
  return out;
}

/// H^1 metric of the grid, (a h I + L / h) per coordinate, L the Neumann path Laplacian.
SparseMatrix h1_metric(int nodes, int d, double a, double h) {
  std::vector<Eigen::Triplet<double>> t;
  for (int m = 0; m < nodes; ++m) {
    const double deg = (m == 0 || m + 1 == nodes) ? 1.0 : 2.0;
    for (int i = 0; i < d; ++i) {
      t.emplace_back(m * d + i, m * d + i, a * h + deg / h);
      if (m + 1 < nodes) {
        t.emplace_back(m * d + i, (m + 1) * d + i, -1.0 / h);
        t.emplace_back((m + 1) * d + i, m * d + i, -1.0 / h);
      }
    }
  }
  SparseMatrix p(nodes * d, nodes * d);
  p.setFromTriplets(t.begin(), t.end());
  return p;
}

/// Hessian of the energy in trivialized coordinates by central differences of
/// the gradient.  Node m only couples to m +- 1, so perturbing every third node
/// at once recovers all blocks in 6 d gradient evaluations.
SparseMatrix hessian_fd(const RotationPath& path, const JetField& j1, const JetField& j2, double eps) {
  const int n = path.dim();
  const int d = algebra_dim(n);
  const int nodes = path.intervals() + 1;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(nodes) * 3 * d * d);
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < d; ++i) {
      std::vector<AlgebraElement> sigma(static_cast<std::size_t>(nodes), AlgebraElement::zero(n));
      Vector e = Vector::Zero(d);
      e(i) = 1.0;
      for (int m = c; m < nodes; m += 3) sigma[static_cast<std::size_t>(m)] = AlgebraElement::from_coords(n, e);
      const Vector gp = flatten(energy_gradient(path.retract(sigma, eps), j1, j2));
      const Vector gm = flatten(energy_gradient(path.retract(sigma, -eps), j1, j2));
      const Vector col = (gp - gm) / (2.0 * eps);
      for (int row = 0; row < nodes; ++row) {
        // the unique perturbed node adjacent to `row`
        int p = row - ((row - c) % 3 + 3) % 3;
        if (p + 1 < row) p += 3;
        if (p < row - 1 || p > row + 1 || p < 0 || p >= nodes) continue;
        for (int r = 0; r < d; ++r) t.emplace_back(row * d + r, p * d + i, col(row * d + r));
      }
    }
  }
  SparseMatrix hess(nodes * d, nodes * d);
  hess.setFromTriplets(t.begin(), t.end());
  return SparseMatrix(0.5 * (hess + SparseMatrix(hess.transpose())));
}

double jet_scale(const JetField& j1, const JetField& j2) {
  double acc = 0.0;
  for (int m = 0; m <= j1.intervals(); ++m)
    acc += std::sqrt(norm_L_squared(j1.node(m), j1.weights()) * norm_L_squared(j2.node(m), j2.weights()));
  return std::max(1.0, acc / (j1.intervals() + 1));
}

/// Solves (H + mu P) x = g, raising mu until the factorization is positive definite.
Vector damped_solve(const SparseMatrix& hess, const SparseMatrix& metric, const Vector& g, double& mu) {
  Eigen::SimplicialLDLT<SparseMatrix> ldlt;
  for (int attempt = 0; attempt < 60; ++attempt) {
    ldlt.compute(SparseMatrix(hess + mu * metric));
    if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > 0.0).all()) return ldlt.solve(g);
    mu = std::max(2.0 * mu, 1e-3) * 2.0;
  }
  fail(ErrorCode::SolverFailure, "could not regularize the energy Hessian");
}

}  // namespace

DirectResult minimize_direct(const RotationPath& init, const JetField& j1, const JetField& j2,
                             const DirectOptions& opts) {
  require(opts.tol > 0.0, ErrorCode::InvalidArgument, "tolerance must be positive");
  const int n = init.dim();
  const double h = j1.step();
  const double a = opts.metric_weight > 0.0 ? opts.metric_weight : jet_scale(j1, j2);
  const SparseMatrix metric = h1_metric(init.intervals() + 1, algebra_dim(n), a, h);

  DirectResult res;
  res.path = init;
  res.energy = discrete_energy(res.path, j1, j2);
  auto grad = energy_gradient(res.path, j1, j2);
  res.grad_norm = gradient_sup_norm(grad);

  constexpr double kArmijo = 1e-4;
  constexpr double kRoundoff = 1e-13;
  double mu = 0.0;
  int stalls = 0;
  while (res.grad_norm > opts.tol) {
    if (res.iterations >= opts.max_iter) return res;
    const Vector g = flatten(grad);
    const SparseMatrix hess = hessian_fd(res.path, j1, j2, 1e-5);
    const Vector step = damped_solve(hess, metric, g, mu);
    const double slope = g.dot(step);
    if (!(slope > 0.0)) break;
    const auto dir = unflatten(step, n);

    bool accepted = false;
    double eta = 1.0;
    const double resolution = kRoundoff * std::max(1.0, std::abs(res.energy.total));
    if (slope < resolution) {
      // The predicted decrease is below the resolution of E itself: accept the
      // Newton step if E is unchanged to round-off and the gradient shrinks.
      RotationPath trial = res.path.retract(dir, -1.0);
      EnergyBreakdown e = discrete_energy(trial, j1, j2);
      auto trial_grad = energy_gradient(trial, j1, j2);
      const double trial_norm = gradient_sup_norm(trial_grad);
      ++res.iterations;
      if (e.total > res.energy.total + resolution || !(trial_norm < res.grad_norm)) break;
      res.path = std::move(trial);
      res.energy = std::move(e);
      grad = std::move(trial_grad);
      res.grad_norm = trial_norm;
      continue;
    }
    for (int tries = 0; tries < 60; ++tries, eta *= 0.5) {
      RotationPath trial = res.path.retract(dir, -eta);
      EnergyBreakdown e;
      try {
        e = discrete_energy(trial, j1, j2);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::AngleAtCut) throw;
        continue;
      }
      if (e.total <= res.energy.total - kArmijo * eta * slope) {
        stalls = e.total < res.energy.total ? 0 : stalls + 1;
        res.path = std::move(trial);
        res.energy = std::move(e);
        accepted = true;
        break;
      }
    }
    ++res.iterations;
    if (!accepted || stalls >= 3) break;  // stalled at round-off level
    mu = eta == 1.0 ? mu * 0.25 : std::max(mu, 1e-3) * 4.0;
    if (mu < 1e-8) mu = 0.0;
    grad = energy_gradient(res.path, j1, j2);
    res.grad_norm = gradient_sup_norm(grad);
  }
  res.converged = res.grad_norm <= opts.tol;
  return res;
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Shooting: return "shooting";
    case Method::Direct: return "direct";
    case Method::Agree: return "agree";
  }
  return "?";
}

Vector DistanceConfig::weights() const { return lambda.size() == 0 ? default_weights(k) : lambda; }

bool energies_agree(double a, double b, double rel) {
  if (std::abs(a) <= 1e-10 && std::abs(b) <= 1e-10) return true;
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

DistanceResult distance(const Curve& c1, const Curve& c2, const DistanceConfig& config) {
  require(c1.dim() == c2.dim(), ErrorCode::DimensionMismatch, "curves live in different dimensions");
  const Vector lambda = config.weights();
  return distance(jet_field(c1, config.k, config.intervals, lambda), jet_field(c2, config.k, config.intervals, lambda),
                  config);
}

DistanceResult distance(const JetField& j1, const JetField& j2, const DistanceConfig& config) {
  require(config.use_shooting || config.use_direct, ErrorCode::InvalidArgument, "no solver enabled");
  require(config.starts >= 1, ErrorCode::InvalidArgument, "need at least one start");
  const auto t0 = std::chrono::steady_clock::now();
  const ShootingProblem problem(j1, j2);
  const int n = problem.dim();
  const int N = problem.intervals();

  std::vector<Rotation> starts = default_starts(n, config.starts, config.component == Component::O);
  for (const auto& g : config.extra_starts) {
    require(g.dim() == n, ErrorCode::DimensionMismatch, "extra start has wrong dimension");
    if (config.component == Component::SO && g.det_sign() < 0) continue;
    starts.push_back(g);
  }

  DistanceResult out;
  out.shooting_start_count = static_cast<int>(starts.size());

  std::vector<DirectResult> direct_runs;
  std::optional<Error> direct_error;
  if (config.use_direct) {
    std::vector<RotationPath> inits;
    for (const auto& g : starts) inits.push_back(RotationPath::constant(g, N));
    for (const auto& p : config.extra_paths) {
      if (config.component == Component::SO && p.det_sign() < 0) continue;
      inits.push_back(p);
    }
    auto runs = detail::parallel_map(inits.size(), [&](std::size_t i) -> std::optional<DirectResult> {
      try {
        return minimize_direct(inits[i], j1, j2, config.direct);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::AngleAtCut) return std::nullopt;
        throw;
      }
    });
    for (auto& r : runs) {
      if (!r) continue;
      out.direct_iterations += r->iterations;
      direct_runs.push_back(std::move(*r));
    }
    std::stable_sort(direct_runs.begin(), direct_runs.end(),
                     [](const DirectResult& x, const DirectResult& y) { return x.energy.total < y.energy.total; });
    if (!direct_runs.empty()) {
      out.direct_best = direct_runs.front().energy.total;
      out.direct_converged = direct_runs.front().converged;
    } else {
      direct_error = Error(ErrorCode::SolverFailure, "every direct descent run failed");
    }
  }

  std::optional<Error> shooting_error;
  if (config.use_shooting) {
    // The basin of the global minimizer under shooting can be very narrow, so
    // the initial rotations of the descent minima are tried as extra starts.
    std::vector<Rotation> shooting_starts = starts;
    for (const auto& r : direct_runs) shooting_starts.push_back(r.path[0]);
    try {
      MultistartReport rep = solve_bvp_multistart(problem, shooting_starts, config.shooting);
      out.critical_points = std::move(rep.points);
      out.failed_starts = rep.failed_starts;
      out.shooting_best = out.critical_points.front().energy.total;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::AllStartsFailed) throw;
      shooting_error = e;
      out.failed_starts = static_cast<int>(shooting_starts.size());
    }
  }
  std::optional<DirectResult> best_direct;
  if (!direct_runs.empty()) best_direct = std::move(direct_runs.front());

  if (!out.shooting_best && !out.direct_best) {
    if (shooting_error) throw *shooting_error;
    throw *direct_error;
  }

  // Polish the critical points with the direct method; they are stationary for
  // the same discrete energy, so this only removes round-off.
  std::optional<DirectResult> polished;
  if (out.shooting_best) {
    DirectOptions polish = config.direct;
    polish.max_iter = std::min(polish.max_iter, 200);
    polished = minimize_direct(out.critical_points.front().path, j1, j2, polish);
  }

  const bool direct_wins = best_direct && (!polished || best_direct->energy.total < polished->energy.total);
  const DirectResult& best = direct_wins ? *best_direct : *polished;
  out.path = best.path;
  out.energy = best.energy;
  out.value = best.energy.total;
  out.grad_norm = best.grad_norm;

  if (out.shooting_best && out.direct_best) {
    out.agree = energies_agree(*out.shooting_best, *out.direct_best, config.agreement);
    out.method = out.agree ? Method::Agree : (direct_wins ? Method::Direct : Method::Shooting);
  } else {
    out.method = out.shooting_best ? Method::Shooting : Method::Direct;
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace jetreg
