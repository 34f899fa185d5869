#pragma once

// Discrete registration energy
//
//   E = 1/2 sum_m w_m ||g_m A1_m - A2_m||_L^2 ds  +  1/2 sum_{m<N} ||log(g_m^T g_{m+1})||^2 / ds
//
// with trapezoidal weights w_0 = w_N = 1/2, and its gradient with respect to
// right perturbations g_m -> g_m exp(eps sigma_m).

#include <vector>

#include "jetreg/jets.hpp"
#include "jetreg/liegroup.hpp"

namespace jetreg {

/// Rotations g_0..g_N on the shared grid, all in one component of O(n).
class RotationPath {
 public:
  RotationPath() = default;
  explicit RotationPath(std::vector<Rotation> nodes);

  static RotationPath constant(const Rotation& g, int intervals);

  int dim() const { return nodes_.front().dim(); }
  int intervals() const { return static_cast<int>(nodes_.size()) - 1; }
  int det_sign() const { return nodes_.front().det_sign(); }
  const Rotation& operator[](int m) const { return nodes_[static_cast<std::size_t>(m)]; }
  const std::vector<Rotation>& nodes() const { return nodes_; }

  /// m -> g_m^T
  RotationPath inverse() const;
  /// m -> g_m exp(step * sigma_m)
  RotationPath retract(const std::vector<AlgebraElement>& sigma, double step) const;
  /// m -> left g_m right
  RotationPath conjugated(const Rotation& left, const Rotation& right) const;

  double max_orthogonality_error() const;

 private:
  std::vector<Rotation> nodes_;
};

/// max_m ||a_m - b_m||_F
double sup_distance(const RotationPath& a, const RotationPath& b);

/// Unwrapped rotation angle theta_m of a 2D path (det = +1), theta_0 in (-pi, pi].
std::vector<double> unwrap_angles(const RotationPath& path);
/// round((theta_N - theta_0) / 2 pi)
int winding_number(const RotationPath& path);

enum class KineticForm {
  Log,    ///< ||log(g_m^T g_{m+1})||^2 / ds
  Chord,  ///< ||g_{m+1} - g_m||_F^2 / ds
};

struct EnergyOptions {
  KineticForm kinetic = KineticForm::Log;
};

struct EnergyBreakdown {
  double total = 0.0;
  double potential = 0.0;
  double kinetic = 0.0;
  /// ||Q_m||_L^2 per node
  std::vector<double> residuals;
};

EnergyBreakdown discrete_energy(const RotationPath& path, const JetField& j1, const JetField& j2,
                                const EnergyOptions& opts = {});

std::vector<AlgebraElement> energy_gradient(const RotationPath& path, const JetField& j1, const JetField& j2,
                                            const EnergyOptions& opts = {});

/// max_m ||G_m||_F
double gradient_sup_norm(const std::vector<AlgebraElement>& grad);
/// sum_m <a_m, b_m>
double pairing(const std::vector<AlgebraElement>& a, const std::vector<AlgebraElement>& b);

}  // namespace jetreg
