#pragma once

// Variational equations of the registration energy
//
//   g' = g Omega,   Omega' = (j c1) <> (g^{-1} j c2)^flat,   Omega(0) = Omega(1) = 0,
//
// solved by shooting on g(0) with a Newton iteration, plus a multi-start
// driver and a scalar angle formulation for n = 2.

#include <vector>

#include "jetreg/energy.hpp"
#include "jetreg/jets.hpp"
#include "jetreg/liegroup.hpp"

namespace jetreg {

struct ShootingProblem {
  JetField j1;
  JetField j2;

  ShootingProblem(JetField first, JetField second);

  int dim() const { return j1.dim(); }
  int intervals() const { return j1.intervals(); }
};

struct StateDerivative {
  Matrix g_dot;
  AlgebraElement omega_dot;
};

/// (g Omega, A1(s) <> (g^{-1} A2(s))^flat) with jets taken from the fields at s.
StateDerivative rhs(double s, const Rotation& g, const AlgebraElement& omega, const JetField& j1,
                    const JetField& j2);

enum class Integrator {
  /// Staggered Lie-group midpoint (leapfrog) scheme: Omega lives on half
  /// steps, g_{m+1} = g_m exp(ds Omega_{m+1/2}).  Its fixed points are exactly
  /// the stationary paths of the discrete energy.  Order 2.
  Midpoint,
  /// Runge-Kutta-Munthe-Kaas, order 4.
  RKMK4,
};

struct IvpSolution {
  RotationPath path;
  /// Omega at the nodes; omega.front() is exactly zero and omega.back() is the
  /// terminal value Omega(1) used as the shooting residual.
  std::vector<AlgebraElement> omega;
};

/// Integrates from (g0, Omega(0) = 0).  steps == 0 uses the jet grid.
IvpSolution integrate_ivp(const Rotation& g0, const ShootingProblem& problem, int steps = 0,
                          Integrator scheme = Integrator::Midpoint);

struct ShootingOptions {
  double tol = 1e-8;
  int max_iter = 50;
  double fd_step = 1e-6;
  int max_halvings = 20;
  /// Reject Jacobians whose condition estimate exceeds this.
  double max_condition = 1e14;
};

struct CriticalPoint {
  RotationPath path;
  std::vector<AlgebraElement> omega;
  EnergyBreakdown energy;
  double residual = 0.0;
  int iterations = 0;
  int start_index = 0;
  /// ||Omega(1)|| before each Newton step and after the last one.
  std::vector<double> residual_history;
};

CriticalPoint solve_shooting(const ShootingProblem& problem, const Rotation& start, const ShootingOptions& opts = {},
                             int start_index = 0);

/// `count` deterministic rotations spread over SO(n) (angles 2 pi j / count
/// for n = 2), optionally followed by their reflections into det = -1.
std::vector<Rotation> default_starts(int n, int count = 8, bool include_reflections = false);

struct MultistartReport {
  std::vector<CriticalPoint> points;  ///< deduplicated, sorted by energy then start index
  int failed_starts = 0;
};

/// Throws AllStartsFailed when no start converges.
MultistartReport solve_bvp_multistart(const ShootingProblem& problem, const std::vector<Rotation>& starts,
                                      const ShootingOptions& opts = {}, double dedup_distance = 1e-4);

/// theta'' for n = 2: sum_i (lambda_i / 2) (R(-theta) c2^(i) x c1^(i)), where
/// x is the 2x2 determinant.
double theta_rhs(double theta, const Matrix& a1, const Matrix& a2, const Vector& lambda);

/// Scalar shooting on theta(0) with theta'(0) = theta'(1) = 0 (n = 2 only).
CriticalPoint solve_theta_2d(const ShootingProblem& problem, double theta0, const ShootingOptions& opts = {});

}  // namespace jetreg
