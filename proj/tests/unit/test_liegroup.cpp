#include <gtest/gtest.h>

#include "jetreg/liegroup.hpp"
#include "jetreg/random.hpp"
#include "oracles.hpp"

using namespace jetreg;

namespace {

AlgebraElement hat3v(double x, double y, double z) { return hat3(Eigen::Vector3d(x, y, z)); }

}  // namespace

TEST(AlgebraElement, KeepsOnlySkewPart) {
  Matrix m(2, 2);
  m << 1, 2, 4, 3;
  const AlgebraElement a(m);
  EXPECT_EQ(a.matrix() + a.matrix().transpose(), Matrix::Zero(2, 2));
  EXPECT_DOUBLE_EQ(a.matrix()(1, 0), 1.0);
}

TEST(AlgebraElement, CoordinatesRoundTrip) {
  Vector c(6);
  c << 1, 2, 3, 4, 5, 6;
  const auto a = AlgebraElement::from_coords(4, c);
  EXPECT_EQ(a.coords(), c);
  EXPECT_DOUBLE_EQ(a.matrix()(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(a.matrix()(2, 3), 6.0);
  EXPECT_THROW(AlgebraElement::from_coords(3, c), Error);
}

TEST(Exp, ZeroIsIdentity) {
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(exp_algebra(AlgebraElement::zero(n)).matrix(), Matrix::Identity(n, n));
}

TEST(Exp, QuarterTurnInPlane) {
  const Rotation r = exp_algebra(hat2(oracle::kPi / 2));
  EXPECT_NEAR((r.matrix() - oracle::rot2(oracle::kPi / 2)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(r.matrix()(0, 0), 0.0, 1e-15);
  EXPECT_NEAR(r.matrix()(1, 0), 1.0, 1e-15);
}

TEST(Exp, HalfTurnAboutX) {
  const Rotation r = exp_algebra(hat3v(oracle::kPi, 0, 0));
  EXPECT_NEAR((r.matrix() - oracle::rodrigues({1, 0, 0}, oracle::kPi)).norm(), 0.0, 1e-14);
  EXPECT_NEAR((r.matrix() - Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix()).norm(), 0.0, 1e-14);
}

TEST(Exp, MatchesRodriguesForRandomAxes) {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Vector3d w = random_matrix(3, 1, rng).col(0);
    // hat3 uses Omega_ij = eps_ijk w_k, i.e. minus the usual cross-product matrix.
    const Matrix expected = oracle::rodrigues(w, -w.norm());
    EXPECT_NEAR((exp_algebra(hat3(w)).matrix() - expected).norm(), 0.0, 1e-13);
  }
}

TEST(Exp, SmallAngleSeriesBranch) {
  const Eigen::Vector3d w(3e-6, -1e-6, 2e-6);
  EXPECT_NEAR((exp_algebra(hat3(w)).matrix() - oracle::exp_series(hat3(w).matrix())).norm(), 0.0, 1e-16);
}

TEST(Exp, GeneralDimensionMatchesSeries) {
  Rng rng(3);
  for (int n = 4; n <= 6; ++n) {
    const auto a = random_algebra(n, 0.5, rng);
    const Rotation r = exp_algebra(a);
    EXPECT_NEAR((r.matrix() - oracle::exp_series(a.matrix())).norm(), 0.0, 1e-13);
    EXPECT_EQ(r.det_sign(), 1);
    EXPECT_LE(r.orthogonality_error(), 1e-12);
  }
}

TEST(Log, IdentityIsZero) {
  for (int n = 2; n <= 5; ++n) EXPECT_LE(log_rotation(Rotation::identity(n)).norm(), 1e-15);
}

TEST(Log, PlanarAngle) {
  const auto a = log_rotation(Rotation::from_matrix(oracle::rot2(0.3)));
  EXPECT_NEAR((a.matrix() - hat2(0.3).matrix()).norm(), 0.0, 1e-15);
}

TEST(Log, HalfTurnIsAtTheCut) {
  const Rotation r = Rotation::from_matrix(oracle::rodrigues({1, 0, 0}, oracle::kPi));
  try {
    log_rotation(r);
    FAIL() << "expected AngleAtCut";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::AngleAtCut);
  }
  EXPECT_THROW(log_rotation(Rotation::from_matrix(oracle::rot2(oracle::kPi))), Error);
}

TEST(Log, NearCutStillInverts) {
  const double t = oracle::kPi - 1e-6;
  const Rotation r = Rotation::from_matrix(oracle::rodrigues({0, 0, 1}, t));
  const auto a = log_rotation(r);
  EXPECT_NEAR(std::abs(vee3(a)(2)), t, 1e-9);
  EXPECT_NEAR((exp_algebra(a).matrix() - r.matrix()).norm(), 0.0, 1e-10);
}

TEST(Log, RejectsReflections) {
  try {
    log_rotation(reflection(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ComponentMismatch);
  }
}

TEST(Log, ExpRoundTripProperty) {
  Rng rng(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < 100; ++i) {
      auto w = random_algebra(n, 1.0, rng);
      w *= 3.0 * uni(rng) / w.norm();
      const Rotation r = exp_algebra(w);
      EXPECT_LE(r.orthogonality_error(), 1e-12);
      EXPECT_LE((log_rotation(r) - w).norm(), 1e-9) << "n=" << n;
    }
  }
}

TEST(Log, MaxRotationAngle) {
  EXPECT_NEAR(max_rotation_angle(Rotation::from_matrix(oracle::rodrigues({1, 2, 3}, 2.0))), 2.0, 1e-12);
  EXPECT_NEAR(max_rotation_angle(Rotation::from_matrix(oracle::rot2(-0.7))), 0.7, 1e-14);
}

TEST(InnerProduct, HatTwoNorm) {
  EXPECT_DOUBLE_EQ(inner_algebra(hat2(1.0), hat2(1.0)), 2.0);
  EXPECT_DOUBLE_EQ(hat2(1.0).norm(), std::sqrt(2.0));
}

TEST(InnerProduct, EqualsMinusTraceOfProduct) {
  Rng rng(8);
  for (int i = 0; i < 20; ++i) {
    const auto a = random_algebra(4, 1.0, rng), b = random_algebra(4, 1.0, rng);
    EXPECT_NEAR(inner_algebra(a, b), -(a.matrix() * b.matrix()).trace(), 1e-13);
    EXPECT_DOUBLE_EQ(inner_algebra(a, b), inner_algebra(b, a));
    EXPECT_GT(inner_algebra(a, a), 0.0);
  }
}

TEST(InnerProduct, OrthogonalToOwnBracket) {
  Rng rng(9);
  for (int n = 2; n <= 5; ++n)
    for (int i = 0; i < 100; ++i) {
      const auto w = random_algebra(n, 1.0, rng), s = random_algebra(n, 1.0, rng);
      EXPECT_NEAR(inner_algebra(w, bracket(s, w)), 0.0, 1e-12);
    }
}

TEST(InnerProduct, AdInvariant) {
  Rng rng(10);
  for (int n = 2; n <= 5; ++n)
    for (int i = 0; i < 100; ++i) {
      const Rotation g = random_rotation(n, rng);
      const auto a = random_algebra(n, 1.0, rng), b = random_algebra(n, 1.0, rng);
      EXPECT_NEAR(inner_algebra(adjoint(g, a), adjoint(g, b)), inner_algebra(a, b), 1e-12);
    }
}

TEST(InnerProduct, DimensionMismatchThrows) {
  EXPECT_THROW(inner_algebra(hat2(1.0), AlgebraElement::zero(3)), Error);
  EXPECT_THROW(bracket(hat2(1.0), AlgebraElement::zero(3)), Error);
}

TEST(Bracket, SelfBracketVanishes) {
  Rng rng(12);
  const auto a = random_algebra(4, 1.0, rng);
  EXPECT_EQ(bracket(a, a).norm(), 0.0);
}

TEST(Bracket, PlaneIsAbelian) { EXPECT_EQ(bracket(hat2(0.4), hat2(-2.0)).norm(), 0.0); }

TEST(Bracket, HatThreeMapsCrossProductWithSign) {
  // With Omega_ij = eps_ijk w_k: [hat(e1), hat(e2)] = -hat(e3).
  const auto b = bracket(hat3v(1, 0, 0), hat3v(0, 1, 0));
  const Matrix direct = oracle::hat_from_levi_civita({1, 0, 0}) * oracle::hat_from_levi_civita({0, 1, 0}) -
                        oracle::hat_from_levi_civita({0, 1, 0}) * oracle::hat_from_levi_civita({1, 0, 0});
  EXPECT_NEAR((b.matrix() - direct).norm(), 0.0, 1e-15);
  EXPECT_NEAR((b.matrix() + oracle::hat_from_levi_civita({0, 0, 1})).norm(), 0.0, 1e-15);

  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const Eigen::Vector3d u = random_matrix(3, 1, rng).col(0), v = random_matrix(3, 1, rng).col(0);
    EXPECT_NEAR((bracket(hat3(u), hat3(v)) + hat3(u.cross(v))).norm(), 0.0, 1e-13);
  }
}

TEST(Hat, PlanarConvention) {
  Matrix expected(2, 2);
  expected << 0, -1, 1, 0;
  EXPECT_EQ(hat2(1.0).matrix(), expected);
  EXPECT_EQ(hat2(0.0).norm(), 0.0);
  EXPECT_EQ(vee2(hat2(-2.5)), -2.5);
  EXPECT_THROW(vee2(AlgebraElement::zero(3)), Error);
}

TEST(Hat, LeviCivitaConvention) {
  Matrix expected(3, 3);
  expected << 0, 1, 0, -1, 0, 0, 0, 0, 0;
  EXPECT_EQ(hat3v(0, 0, 1).matrix(), expected);
  EXPECT_EQ(hat3v(0, 0, 0).norm(), 0.0);
  Rng rng(14);
  for (int i = 0; i < 20; ++i) {
    const Eigen::Vector3d w = random_matrix(3, 1, rng).col(0);
    EXPECT_NEAR((hat3(w).matrix() - oracle::hat_from_levi_civita(w)).norm(), 0.0, 1e-15);
    EXPECT_NEAR((vee3(hat3(w)) - w).norm(), 0.0, 1e-15);
  }
  EXPECT_THROW(vee3(hat2(1.0)), Error);
}

TEST(Rotation, FromMatrixValidates) {
  EXPECT_NO_THROW(Rotation::from_matrix(oracle::rot2(1.0)));
  try {
    Rotation::from_matrix(1.01 * Matrix::Identity(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrthogonal);
  }
  EXPECT_EQ(Rotation::from_matrix(reflection(3).matrix()).det_sign(), -1);
}

TEST(Project, FixesOrthogonalInput) {
  const Matrix r = oracle::rodrigues({1, 1, 0}, 0.8);
  EXPECT_NEAR((project_rotation(r).matrix() - r).norm(), 0.0, 1e-15);
}

TEST(Project, ScaledIdentity) {
  EXPECT_NEAR((project_rotation(1.001 * Matrix::Identity(3, 3)).matrix() - Matrix::Identity(3, 3)).norm(), 0.0, 1e-15);
}

TEST(Project, SmallNoise) {
  Rng rng(15);
  const Matrix r = oracle::rodrigues({0, 1, 2}, 1.3);
  const Rotation p = project_rotation(r + 1e-9 * random_matrix(3, 3, rng));
  EXPECT_LE((p.matrix() - r).norm(), 1e-8);
  EXPECT_LE(p.orthogonality_error(), 1e-14);
}

TEST(Project, KeepsComponentAndRejectsSingular) {
  EXPECT_EQ(project_rotation(reflection(3).matrix() * 1.01).det_sign(), -1);
  try {
    project_rotation(Matrix::Zero(3, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}
