#pragma once

// d(c1, c2) = min over rotation paths of the discrete registration energy,
// computed by multi-start shooting and by direct descent on the discrete
// energy; each method certifies the other.

#include <optional>
#include <vector>

#include "jetreg/bvp.hpp"
#include "jetreg/curves.hpp"
#include "jetreg/energy.hpp"

namespace jetreg {

struct DirectOptions {
  /// Stop once max_m ||G_m|| <= tol.
  double tol = 1e-8;
  int max_iter = 500;
  /// Zeroth-order weight of the H^1 damping metric; <= 0 picks it from the jet scale.
  double metric_weight = 0.0;
};

struct DirectResult {
  RotationPath path;
  EnergyBreakdown energy;
  int iterations = 0;
  double grad_norm = 0.0;
  /// False when max_iter was reached first (best-so-far path returned).
  bool converged = false;
};

/// Riemannian descent on the product of rotation groups: g_m <- g_m exp(-eta v_m)
/// with v = (H + mu P)^{-1} G, where G is the energy gradient, H a
/// finite-difference Hessian (block tridiagonal) and P the H^1 metric of the grid.
/// mu is raised until H + mu P is positive definite, so v is always a descent
/// direction; Armijo backtracking on eta.  Energy never increases beyond round-off
/// (1e-13 relative), which is accepted only when the gradient norm halves.
DirectResult minimize_direct(const RotationPath& init, const JetField& j1, const JetField& j2,
                             const DirectOptions& opts = {});

enum class Component { SO, O };
enum class Method { Shooting, Direct, Agree };

const char* to_string(Method m);

struct DistanceConfig {
  int k = 1;
  /// Empty means (1, 0, ..., 0).
  Vector lambda;
  int intervals = 200;
  ShootingOptions shooting;
  DirectOptions direct;
  int starts = 8;
  Component component = Component::SO;
  bool use_shooting = true;
  bool use_direct = true;
  /// Extra shooting starts tried after the defaults (e.g. a previous solution's g(0)).
  std::vector<Rotation> extra_starts;
  /// Extra initial paths for the direct minimizer.
  std::vector<RotationPath> extra_paths;
  /// Relative agreement threshold between the two methods.
  double agreement = 1e-6;

  Vector weights() const;
};

struct DistanceResult {
  double value = 0.0;
  EnergyBreakdown energy;
  RotationPath path;
  Method method = Method::Agree;

  std::vector<CriticalPoint> critical_points;
  /// Critical points with start_index >= this were shot from g(0) of a
  /// direct-descent minimum rather than from a configured start.
  int shooting_start_count = 0;
  int failed_starts = 0;
  std::optional<double> shooting_best;
  /// Best energy reached by descent from constant paths and extra_paths (independent of shooting).
  std::optional<double> direct_best;
  bool agree = false;
  int direct_iterations = 0;
  bool direct_converged = true;

  /// Gradient sup-norm of the discrete energy at `path`.
  double grad_norm = 0.0;
  double wall_seconds = 0.0;
};

/// |a - b| <= rel * max(|a|, |b|), treating two values below 1e-10 as equal.
bool energies_agree(double a, double b, double rel = 1e-6);

/// Throws SolverFailure (or the underlying error) only when both methods fail.
DistanceResult distance(const Curve& c1, const Curve& c2, const DistanceConfig& config = {});
/// Same, on prebuilt jet fields.
DistanceResult distance(const JetField& j1, const JetField& j2, const DistanceConfig& config = {});

}  // namespace jetreg
