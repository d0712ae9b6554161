#include "eprfw/transport.hpp"
#include "eprfw/verification/oracles.hpp"
#include "eprfw/verification/suite.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace eprfw;

namespace {

CircularWorldline orbit(double alpha, double sinh_xi, Direction d = Direction::positive) {
  return CircularWorldline(StringGeometry(alpha), 2.0, std::asinh(sinh_xi), d);
}

Matrix2c rotation2(double theta) {
  Matrix2c m;
  m << std::cos(0.5 * theta), -std::sin(0.5 * theta), std::sin(0.5 * theta), std::cos(0.5 * theta);
  return m;
}

}  // namespace

TEST(Generators, SpinHalfAlgebra) {
  // [S^{ab}, S^{cd}] = -i (eta^{bc} S^{ad} - eta^{ac} S^{bd} - eta^{bd} S^{ac} + eta^{ad} S^{bc});
  // the sign is fixed by [S^{12}, S^{23}] = i S^{31} with a mostly-plus eta.
  for (Chirality ch : {Chirality::left, Chirality::right}) {
    const Generators<2> s = spin_half_generators(ch);
    const Matrix4& eta = minkowski();
    double worst = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        for (int c = 0; c < 4; ++c) {
          for (int d = 0; d < 4; ++d) {
            const Matrix2c lhs = s[a][b] * s[c][d] - s[c][d] * s[a][b];
            const Matrix2c rhs = -kI * (eta(b, c) * s[a][d] - eta(a, c) * s[b][d] -
                                       eta(b, d) * s[a][c] + eta(a, d) * s[b][c]);
            worst = std::max(worst, max_abs_diff(lhs, rhs));
          }
        }
      }
    }
    EXPECT_LT(worst, 1e-15);
  }
}

TEST(Generators, DiracIsBlockDiagonalInChiralBasis) {
  const Generators<4> s = dirac_spin_generators();
  const Generators<2> left = spin_half_generators(Chirality::left);
  const Generators<2> right = spin_half_generators(Chirality::right);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      EXPECT_LT((s[a][b].topRightCorner<2, 2>().cwiseAbs().maxCoeff()), 1e-15);
      EXPECT_LT((max_abs_diff(s[a][b].topLeftCorner<2, 2>(), left[a][b])), 1e-15);
      EXPECT_LT((max_abs_diff(s[a][b].bottomRightCorner<2, 2>(), right[a][b])), 1e-15);
    }
  }
}

TEST(Generators, RotationExponentialIsReal) {
  const Generators<2> s = spin_half_generators();
  // S^{31} generates rotations about the 2-axis.
  const Matrix2c u = expm((-kI * 0.7 * s[3][1]).eval());
  EXPECT_LT(u.imag().cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT(max_abs_diff(u * u.adjoint(), Matrix2c::Identity()), 1e-15);
}

TEST(Expm, MatchesReferenceOnRandomMatrices) {
  std::mt19937_64 rng(0x7a1);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    Matrix2c a;
    const double scale = std::exp(0.5 * n(rng));
    for (int k = 0; k < 4; ++k) {
      a(k / 2, k % 2) = complex(n(rng), n(rng)) * scale;
    }
    const Matrix2c ref = oracle::reference_expm(a);
    EXPECT_LT(max_abs_diff(expm(a), ref), 1e-12 * (1.0 + ref.cwiseAbs().maxCoeff()));
  }
}

TEST(Params, SubstitutionValues) {
  const TransportParams p = transport_params(orbit(0.5, 0.75), kPi);
  EXPECT_NEAR(p.eta1, -1.472622, 1e-6);
  EXPECT_NEAR(p.eta2, -2.454369, 1e-6);
  EXPECT_NEAR(p.theta, 0.625 * kPi, 1e-15);
  EXPECT_NEAR(std::norm(p.gamma * p.gamma - (p.eta1 * p.eta1 - p.eta2 * p.eta2)), 0.0, 1e-24);
}

TEST(Params, AtRest) {
  const TransportParams p = transport_params(orbit(0.5, 0.0), 1.3);
  EXPECT_EQ(p.eta1, 0.0);
  EXPECT_DOUBLE_EQ(p.eta2, -0.65);
  EXPECT_DOUBLE_EQ(p.theta, 0.65);
}

TEST(Params, GammaSquaredIdentityOnRandomInputs) {
  std::mt19937_64 rng(0x7a2);
  std::uniform_real_distribution<double> alpha(0.05, 1.0);
  std::uniform_real_distribution<double> xi(0.0, 3.0);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * kPi);
  for (int i = 0; i < 200; ++i) {
    const TransportParams p = transport_params(
        CircularWorldline(StringGeometry(alpha(rng)), 1.0, xi(rng),
                          i % 2 ? Direction::positive : Direction::negative),
        phi(rng));
    const double g2 = p.eta1 * p.eta1 - p.eta2 * p.eta2;
    EXPECT_LT(std::abs(p.gamma * p.gamma - g2), 1e-12 * (1.0 + std::abs(g2)));
  }
}

TEST(Params, NegativePhiRejected) {
  EXPECT_THROW(transport_params(orbit(0.5, 0.75), -0.1), ArgumentError);
}

TEST(WignerAngle, SubstitutionValues) {
  EXPECT_DOUBLE_EQ(wigner_angle(1.0, 0.0, kPi / 2.0), kPi / 2.0);
  EXPECT_NEAR(wigner_angle(0.5, std::acosh(1.25), kPi), 0.625 * kPi, 1e-15);
}

TEST(ClosedForm, FullTurnAtRestIsMinusIdentity) {
  const SpinHalfOperator x = transport_closed_form(transport_params(orbit(1.0, 0.0), 2.0 * kPi));
  EXPECT_LT(max_abs_diff(x.m, (-Matrix2c::Identity()).eval()), 1e-15);
}

TEST(ClosedForm, AtRestIsRotation) {
  for (double theta : {0.1, 1.0, 2.5, 5.0}) {
    const SpinHalfOperator x = transport_closed_form(transport_params(orbit(1.0, 0.0), theta));
    EXPECT_LT(max_abs_diff(x.m, rotation2(theta)), 1e-15);
  }
}

TEST(ClosedForm, NoTransportIsIdentity) {
  EXPECT_EQ(transport_closed_form(TransportParams::from_etas(0.0, 0.0)).m, Matrix2c::Identity());
}

TEST(ClosedForm, MatchesReferenceExponentialOnRandomParams) {
  std::mt19937_64 rng(0x7a3);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int i = 0; i < 300; ++i) {
    // Includes real gamma (|eta1| > |eta2|) which never occurs on orbits.
    const TransportParams p = TransportParams::from_etas(n(rng), n(rng));
    const Matrix2c ref = oracle::reference_expm((0.5 * p.generator()).eval());
    EXPECT_LT(max_abs_diff(transport_closed_form(p).m, ref), 1e-12 * (1.0 + ref.cwiseAbs().maxCoeff()));
  }
}

TEST(ClosedForm, SmallGammaSeriesIsContinuous) {
  for (double e : {1e-3, 1e-5, 1e-7, 1e-9}) {
    const TransportParams p = TransportParams::from_etas(0.4 + e, 0.4);
    const Matrix2c ref = oracle::reference_expm((0.5 * p.generator()).eval());
    EXPECT_LT(max_abs_diff(transport_closed_form(p).m, ref), 1e-14) << "e=" << e;
  }
}

TEST(ClosedForm, UnitDeterminant) {
  std::mt19937_64 rng(0x7a4);
  std::uniform_real_distribution<double> sx(0.0, 3.0);
  std::uniform_real_distribution<double> phi(0.0, 2.0 * kPi);
  for (int i = 0; i < 200; ++i) {
    const SpinHalfOperator x = transport_closed_form(transport_params(orbit(0.6, sx(rng)), phi(rng)));
    EXPECT_LT(std::abs(x.det() - 1.0), 1e-12 * x.m.squaredNorm());
  }
}

TEST(Numeric, ConvergesToClosedForm) {
  const CircularWorldline wl = orbit(0.5, 0.75);
  const SpinHalfOperator closed = transport_closed_form(transport_params(wl, kPi));
  const SpinHalfOperator x = transport_numeric<Representation::spin_half>(wl, kPi, 4096);
  EXPECT_LT(max_abs_diff(x.m, closed.m), 1e-10);
}

TEST(Numeric, MatchesClosedFormOnGrid) {
  for (double alpha : {0.25, 0.5, 0.9, 1.0}) {
    for (double sx : {0.0, 0.75, 2.0}) {
      for (double phi : {kPi / 4.0, kPi / 2.0, kPi, 2.0 * kPi}) {
        for (Direction d : {Direction::positive, Direction::negative}) {
          const CircularWorldline wl = orbit(alpha, sx, d);
          const SpinHalfOperator closed = transport_closed_form(transport_params(wl, phi));
          const SpinHalfOperator x = transport_numeric<Representation::spin_half>(wl, phi, 4096);
          EXPECT_LT(max_abs_diff(x.m, closed.m), 1e-10);
        }
      }
    }
  }
}

TEST(Numeric, FullTurnAtRest) {
  const SpinHalfOperator x = transport_numeric<Representation::spin_half>(orbit(1.0, 0.0), 2.0 * kPi, 4096);
  EXPECT_LT(max_abs_diff(x.m, (-Matrix2c::Identity()).eval()), 1e-12);
}

TEST(Numeric, EmptyPathIsIdentity) {
  for (std::size_t n : {1u, 7u, 4096u}) {
    EXPECT_EQ(transport_numeric<Representation::spin_half>(orbit(0.5, 0.75), 0.0, n).m,
              Matrix2c::Identity());
  }
}

TEST(Numeric, ZeroStepsRejected) {
  EXPECT_THROW(transport_numeric<Representation::spin_half>(orbit(0.5, 0.75), kPi, 0), ArgumentError);
}

TEST(Numeric, VariableCoefficientSecondOrder) {
  EXPECT_GE(verify::variable_coefficient_min_ratio(), 1.9);
}

TEST(Numeric, VariableCoefficientIsOrderSensitive) {
  // Non-commuting generators: the ordered product differs from the exponential
  // of the integrated generator.
  const oracle::VariableCoefficientPath path;
  const Matrix2c ordered = transport_numeric_spin_half(path, kPi, 4096).m;
  const Generators<2> g = spin_half_generators(chirality_for(path.direction()));
  Matrix2c sum = Matrix2c::Zero();
  const std::size_t n = 4096;
  const double h = kPi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    sum += h * spin_generator((minkowski() * path.connection_along((static_cast<double>(k) + 0.5) * h)).eval(), g);
  }
  EXPECT_GT(max_abs_diff(ordered, oracle::reference_expm(sum)), 1e-4);
}

TEST(Dirac, ChiralBlockMatchesClosedForm) {
  for (Direction d : {Direction::positive, Direction::negative}) {
    const CircularWorldline wl = orbit(0.5, 0.75, d);
    const DiracOperator dirac = transport_numeric<Representation::dirac>(wl, kPi, 4096);
    const SpinHalfOperator closed = transport_closed_form(transport_params(wl, kPi));
    EXPECT_LT(max_abs_diff(chiral_block(dirac, chirality_for(d)).m, closed.m), 1e-8);
    // The other block carries the opposite boost sense and does not match.
    const Chirality other = chirality_for(d) == Chirality::left ? Chirality::right : Chirality::left;
    EXPECT_GT(max_abs_diff(chiral_block(dirac, other).m, closed.m), 1e-2);
  }
}

TEST(Dirac, IdentityBlocks) {
  const DiracOperator id{Matrix4c::Identity()};
  EXPECT_EQ(chiral_block(id, Chirality::left).m, Matrix2c::Identity());
  EXPECT_EQ(chiral_block(id, Chirality::right).m, Matrix2c::Identity());
}

TEST(Dirac, RotationOnlyBlocksAgree) {
  const DiracOperator dirac = transport_numeric<Representation::dirac>(orbit(0.5, 0.0), 1.7, 256);
  const Matrix2c l = chiral_block(dirac, Chirality::left).m;
  const Matrix2c r = chiral_block(dirac, Chirality::right).m;
  EXPECT_LT(max_abs_diff(l, r), 1e-14);
  EXPECT_LT(max_abs_diff(l * l.adjoint(), Matrix2c::Identity()), 1e-12);
}

TEST(Dirac, OffBlockRejected) {
  Matrix4c m = Matrix4c::Identity();
  m(0, 3) = 0.5;
  EXPECT_THROW(chiral_block(DiracOperator{m}, Chirality::left), StructuralError);
}

TEST(Spinor, Actions) {
  const double theta = 1.1;
  const SpinHalfOperator rest = transport_closed_form(transport_params(orbit(1.0, 0.0), theta));
  const Spinor s = apply_to_spinor(rest, spin_up());
  EXPECT_LT(std::abs(s[0] - std::cos(0.5 * theta)), 1e-15);
  EXPECT_LT(std::abs(s[1] - std::sin(0.5 * theta)), 1e-15);
  EXPECT_EQ(apply_to_spinor({Matrix2c::Identity()}, spin_down()), spin_down());

  const TransportParams p = transport_params(orbit(0.5, 0.75), kPi);
  const SpinHalfOperator x = transport_closed_form(p);
  const Spinor up = apply_to_spinor(x, spin_up());
  const double k = std::sin(0.5 * p.theta) / p.theta;
  EXPECT_LT(std::abs(up[0] - std::cos(0.5 * p.theta)), 1e-15);
  EXPECT_LT(std::abs(up[1] - k * (p.eta1 - p.eta2)), 1e-15);
}

TEST(WignerAngle, ExtractedAtRest) {
  for (double alpha : {0.25, 0.5, 0.9, 1.0}) {
    for (double phi : {kPi / 4.0, kPi / 2.0, kPi, 1.9 * kPi}) {
      const SpinHalfOperator x =
          transport_numeric<Representation::spin_half>(orbit(alpha, 0.0), phi, 4096);
      EXPECT_NEAR(rotation_angle_about_2_axis(x), alpha * phi, 1e-10);
    }
  }
}

TEST(WignerAngle, FromTraceWhenMoving) {
  const CircularWorldline wl = orbit(0.5, 0.75);
  const SpinHalfOperator x = transport_numeric<Representation::spin_half>(wl, 1.0, 4096);
  EXPECT_NEAR(precession_angle_from_trace(x), wigner_angle(0.5, wl.xi(), 1.0), 1e-10);
}
