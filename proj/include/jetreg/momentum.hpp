#pragma once

// Momentum map of the O(n) action on jet space (the diamond operator).

#include <utility>

#include "jetreg/liegroup.hpp"

namespace jetreg {

/// A <> (B L) = (A L B^T - B L A^T) / 2.  The flat map is applied here from the
/// weights; callers pass the raw jet B.
AlgebraElement diamond(const Matrix& a, const Matrix& b, const Vector& lambda);

/// Natural pairing of a dual element (held as a skew matrix m) with an algebra
/// element: tr(m omega).  Under <., .>_o(n) this equals -<m, omega>.
double dual_pairing(const AlgebraElement& m, const AlgebraElement& omega);

/// Both sides of the defining identity <A <> B^flat, Omega> = <B^flat, Omega A>,
/// evaluated independently: {dual_pairing(diamond(A, B), Omega), inner_L(B, Omega A)}.
std::pair<double, double> diamond_pairing_check(const Matrix& a, const Matrix& b, const Vector& lambda,
                                                const AlgebraElement& omega);

/// Gradient with respect to right perturbations g exp(eps sigma) of
/// 1/2 ||g A1 - A2||_L^2, i.e. A1 <> (g^{-1} A2)^flat.  Critical paths satisfy
/// Omega' = matching_force(g, A1, A2).
AlgebraElement matching_force(const Rotation& g, const Matrix& a1, const Matrix& a2, const Vector& lambda);

}  // namespace jetreg
