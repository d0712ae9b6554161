#include "eprfw/epr.hpp"
#include "eprfw/verification/suite.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace eprfw;

namespace {

TwoQubitState product(const Spinor& a, const Spinor& b) {
  TwoQubitState s;
  s.amp << a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1];
  return s;
}

TwoQubitState evolved(double alpha, double xi, double phi) {
  const PairTransport ops = pair_transport_closed_form(StringGeometry(alpha), 2.0, xi, phi);
  return evolve_pair(initial_state(), ops.plus, ops.minus);
}

}  // namespace

TEST(BellBasis, OrthonormalAndComplete) {
  const BellBasis b = bell_states();
  const auto v = b.ordered();
  Matrix4c sum = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_NEAR(std::abs(v[i]->inner(*v[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
    }
    sum += v[i]->amp * v[i]->amp.adjoint();
  }
  EXPECT_LT(max_abs_diff(sum, Matrix4c::Identity()), 1e-12);
}

TEST(BellBasis, SingletDecomposition) {
  const BellCoefficients c = bell_decomposition(initial_state());
  EXPECT_NEAR(std::abs(c[1] - 1.0), 0.0, 1e-15);
  EXPECT_EQ(std::abs(c[0]) + std::abs(c[2]) + std::abs(c[3]), 0.0);
}

TEST(EvolvePair, IdentityLeavesStateUnchanged) {
  const SpinHalfOperator id{Matrix2c::Identity()};
  EXPECT_EQ(evolve_pair(initial_state(), id, id).amp, initial_state().amp);
}

TEST(EvolvePair, FactorOrderIsPlusFirst) {
  // sigma^1 on the first factor only: |01> - |10> -> |11> - |00>.
  const TwoQubitState s = evolve_pair(initial_state(), {pauli(1)}, {Matrix2c::Identity()});
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s.amp[0] + r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.amp[3] - r), 0.0, 1e-15);
}

TEST(FinalState, ReproducedFromTransportOnGrid) {
  for (double alpha : {0.25, 0.5, 0.9, 1.0}) {
    for (double sx : {0.0, 0.75, 2.0}) {
      for (double phi : {kPi / 4.0, kPi / 2.0, kPi, 2.0 * kPi}) {
        const double xi = std::asinh(sx);
        EXPECT_LT(distance_up_to_global_phase(evolved(alpha, xi, phi),
                                              final_state_closed_form(alpha, xi, phi)),
                  1e-10)
            << alpha << ' ' << sx << ' ' << phi;
      }
    }
  }
}

TEST(FinalState, ReproducedFromNumericTransport) {
  const StringGeometry geom(0.5);
  const double xi = std::asinh(0.75);
  const CircularOrbitPath plus{CircularWorldline(geom, 2.0, xi, Direction::positive)};
  const CircularOrbitPath minus{CircularWorldline(geom, 2.0, xi, Direction::negative)};
  const TwoQubitState s = evolve_pair(initial_state(), transport_numeric_spin_half(plus, kPi, 4096),
                                      transport_numeric_spin_half(minus, kPi, 4096));
  EXPECT_LT(distance_up_to_global_phase(s, final_state_closed_form(0.5, xi, kPi)), 1e-10);
}

TEST(FinalState, AtRestMatchesEvolvedState) {
  for (double theta : {0.3, kPi / 2.0, 2.0, 4.0}) {
    const TwoQubitState s = evolved(1.0, 0.0, theta);
    EXPECT_LT((s.amp - final_state_closed_form(1.0, 0.0, theta).amp).cwiseAbs().maxCoeff(), 1e-14);
    const BellCoefficients c = bell_decomposition(s);
    EXPECT_NEAR(std::abs(c[1] - std::cos(theta)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(c[2]), std::abs(std::sin(theta)), 1e-14);
    EXPECT_NEAR(std::abs(c[0]) + std::abs(c[3]), 0.0, 1e-14);
  }
}

TEST(FinalState, ZeroAngleIsSinglet) {
  const TwoQubitState s = final_state_closed_form(0.5, 1.0, 0.0);
  EXPECT_EQ(s.amp, initial_state().amp);
  EXPECT_DOUBLE_EQ(s.norm(), 1.0);
}

TEST(FinalState, NormWhenMoving) {
  const double xi = std::asinh(0.75);
  const double theta = 0.625 * kPi;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double want = c * c + s * s * (0.75 * 0.75 + 1.25 * 1.25);
  EXPECT_NEAR(final_state_closed_form(0.5, xi, kPi).amp.squaredNorm(), want, 1e-14);
  EXPECT_NEAR(evolved(0.5, xi, kPi).amp.squaredNorm(), want, 1e-12);
}

TEST(GlobalPhase, InvariantUnderPhase) {
  TwoQubitState a = final_state_closed_form(0.5, 0.4, 1.0);
  TwoQubitState b = a;
  b.amp *= std::polar(1.0, 0.7);
  EXPECT_LT(distance_up_to_global_phase(a, b), 1e-15);
  b.amp[0] += 0.1;
  EXPECT_GT(distance_up_to_global_phase(a, b), 0.05);
}

TEST(Correlator, BasicValues) {
  const BellBasis b = bell_states();
  const MeasurementSetting s1(pauli(1));
  const MeasurementSetting s3(pauli(3));
  EXPECT_NEAR(correlator(b.psi_minus, s3, s3), -1.0, 1e-15);
  EXPECT_NEAR(correlator(b.phi_plus, s1, s1), 1.0, 1e-15);
  EXPECT_NEAR(correlator(evolved(1.0, 0.0, kPi / 2.0), s3, s3), 1.0, 1e-15);
  EXPECT_THROW(correlator(TwoQubitState{}, s1, s1), DomainError);
}

TEST(Correlator, RealAndBoundedOnRandomStates) {
  std::mt19937_64 rng(0x8c1);
  std::normal_distribution<double> n(0.0, 1.0);
  const ChshSettings x = chsh_settings();
  for (int i = 0; i < 200; ++i) {
    TwoQubitState s;
    for (int k = 0; k < 4; ++k) {
      s.amp[k] = complex(n(rng), n(rng));
    }
    for (const auto* A : {&x.a, &x.a_prime}) {
      for (const auto* B : {&x.b, &x.b_prime}) {
        const double c = correlator(s, *A, *B);
        EXPECT_LE(std::abs(c), 1.0 + 1e-12);
      }
    }
  }
}

TEST(MeasurementSetting, RejectsNonObservables) {
  EXPECT_THROW(MeasurementSetting(0.5 * pauli(1)), DomainError);
  EXPECT_THROW(MeasurementSetting(kI * pauli(1)), DomainError);
}

TEST(Chsh, SingletIsTsirelson) {
  EXPECT_NEAR(chsh_direct(initial_state()), kTsirelson, 1e-12);
  EXPECT_NEAR(kTsirelson, 2.828427, 1e-6);
}

TEST(Chsh, ProductStatesRespectClassicalBound) {
  EXPECT_LE(chsh_direct(product(spin_up(), spin_up())), 2.0 + 1e-12);
  std::mt19937_64 rng(0x8c2);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Spinor a(complex(n(rng), n(rng)), complex(n(rng), n(rng)));
    const Spinor b(complex(n(rng), n(rng)), complex(n(rng), n(rng)));
    EXPECT_LE(chsh_direct(product(a, b)), 2.0 + 1e-12);
  }
}

TEST(Chsh, DegradesAtQuarterTurn) {
  EXPECT_LT(chsh_direct(evolved(1.0, 0.0, kPi / 4.0)), kTsirelson - 1e-3);
}

TEST(ChshClosedForm, SubstitutionValues) {
  for (double xi : {0.0, 0.5, 2.0}) {
    EXPECT_NEAR(chsh_closed_form(0.0, xi), kTsirelson, 1e-12);
    EXPECT_NEAR(chsh_closed_form(kPi, xi), kTsirelson, 1e-12);
  }
  EXPECT_NEAR(chsh_closed_form(kPi / 2.0, 0.0), 0.0, 1e-12);
}

TEST(ChshClosedForm, PeriodicAndEven) {
  std::mt19937_64 rng(0x8c3);
  std::uniform_real_distribution<double> th(-10.0, 10.0);
  std::uniform_real_distribution<double> xi(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    const double t = th(rng);
    const double x = xi(rng);
    const double v = chsh_closed_form(t, x);
    EXPECT_NEAR(chsh_closed_form(t + 2.0 * kPi, x), v, 1e-10 * (1.0 + v));
    EXPECT_NEAR(chsh_closed_form(-t, x), v, 1e-12 * (1.0 + v));
  }
}

// The closed form and the direct evaluation disagree at rest for generic
// angles; both are kept and the discrepancy is reported. These pin the
// values each one actually produces.
TEST(ChshClosedForm, DirectEvaluationAtRest) {
  for (double theta : {0.3, 1.0, kPi / 2.0, 2.2}) {
    const double c = std::cos(theta);
    EXPECT_NEAR(chsh_direct(evolved(1.0, 0.0, theta)), kTsirelson * std::abs(std::cos(2.0 * theta)),
                1e-12);
    EXPECT_NEAR(chsh_closed_form(theta, 0.0), kTsirelson * c * c, 1e-12);
  }
}

TEST(Restoration, ZeroAngleLeavesSettingsUnchanged) {
  const ChshSettings r = restored_settings(0.0);
  const ChshSettings b = chsh_settings();
  EXPECT_LT(max_abs_diff(r.a.op(), b.a.op()), 1e-15);
  EXPECT_LT(max_abs_diff(r.a_prime.op(), b.a_prime.op()), 1e-15);
  EXPECT_LT(max_abs_diff(r.b.op(), b.b.op()), 1e-15);
  EXPECT_LT(max_abs_diff(r.b_prime.op(), b.b_prime.op()), 1e-15);
}

// Selects the observer sign assignment: the shipped one must be the one that
// restores maximal violation at rest over the grid.
TEST(Restoration, ShippedAssignmentRestoresAtRest) {
  double worst[2] = {0.0, 0.0};
  for (double alpha : {0.25, 0.5, 0.9, 1.0}) {
    for (double phi : {kPi / 4.0, kPi / 2.0, kPi, 2.0 * kPi, 1.3}) {
      const TwoQubitState s = evolved(alpha, 0.0, phi);
      const double theta = wigner_angle(alpha, 0.0, phi);
      for (auto a : {RestorationAssignment::forward, RestorationAssignment::reversed}) {
        const double err = std::abs(chsh_value(s, restored_settings(theta, a)) - kTsirelson);
        double& w = worst[a == RestorationAssignment::forward ? 0 : 1];
        w = std::max(w, err);
      }
    }
  }
  const auto best = worst[0] <= worst[1] ? RestorationAssignment::forward
                                         : RestorationAssignment::reversed;
  EXPECT_EQ(best, kRestorationAssignment);
  EXPECT_LT(std::min(worst[0], worst[1]), 1e-10);
  EXPECT_GT(std::max(worst[0], worst[1]), 1e-3);
}

TEST(BellReport, Fields) {
  const BellReport r = bell_report(StringGeometry(0.5), 2.0, std::asinh(0.75), kPi);
  EXPECT_DOUBLE_EQ(r.theta, wigner_angle(0.5, std::asinh(0.75), kPi));
  EXPECT_NEAR(r.norm * r.norm,
              std::pow(std::cos(r.theta), 2) + std::pow(std::sin(r.theta), 2) * std::cosh(2.0 * r.xi),
              1e-12);
  EXPECT_NEAR(r.closed_form_discrepancy, std::abs(r.chsh_direct - r.chsh_closed), 1e-15);
  EXPECT_NEAR(r.restored_residual, std::abs(r.chsh_restored - kTsirelson), 1e-15);
  EXPECT_LE(r.chsh_direct, kTsirelson + 1e-12);
}

TEST(BellReport, ZeroAngle) {
  const BellReport r = bell_report(StringGeometry(0.5), 2.0, 0.7, 0.0);
  EXPECT_NEAR(r.chsh_direct, kTsirelson, 1e-12);
  EXPECT_NEAR(r.chsh_closed, kTsirelson, 1e-12);
  EXPECT_NEAR(r.restored_residual, 0.0, 1e-12);
}

TEST(Verify, InjectedSignFlipBreaksEndToEndCheck) {
  verify::Options opt;
  opt.steps = 256;
  opt.inject_spin_connection_sign_flip = true;
  const verify::Report rep = verify::run(opt);
  bool found = false;
  for (const auto& c : rep.checks) {
    if (c.name == "epr.final_state.geometry_to_state") {
      found = true;
      EXPECT_FALSE(c.passed());
    }
    if (c.name == "epr.final_state.closed_form_operators") {
      EXPECT_TRUE(c.passed());
    }
  }
  EXPECT_TRUE(found);
  EXPECT_FALSE(rep.all_passed());
}
