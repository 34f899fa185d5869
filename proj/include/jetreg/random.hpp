#pragma once

// Seeded generators for property checks.

#include <cstdint>
#include <random>

#include "jetreg/curves.hpp"
#include "jetreg/energy.hpp"

namespace jetreg {

using Rng = std::mt19937_64;

Matrix random_matrix(int rows, int cols, Rng& rng);
/// Skew matrix with N(0, scale^2) coordinates.
AlgebraElement random_algebra(int n, double scale, Rng& rng);
/// Haar-distributed element of SO(n) (QR of a Gaussian matrix).
Rotation random_rotation(int n, Rng& rng);
RigidTransform random_rigid(int n, Rng& rng);
/// Smooth random path with small increments: g0 exp(sum of a few Fourier modes).
RotationPath random_path(int n, int intervals, Rng& rng, double amplitude = 1.0);
/// A line (possibly sinusoidally reparametrized), circle or graph in R^n,
/// followed by a random rigid motion.
Curve random_curve(int n, Rng& rng);

}  // namespace jetreg
