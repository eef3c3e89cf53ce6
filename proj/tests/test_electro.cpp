#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chordmeans/electro.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace chordmeans;
namespace {
constexpr double kPi = std::numbers::pi;

ArcLengthCurve trefoil() {
  // (sin t + 2 sin 2t, cos t - 2 cos 2t, -sin 3t)
  std::vector<FourierMode> m = {{1, {0.0, 0.5, 0.0}, {-0.5, 0.0, 0.0}},
                                {-1, {0.0, 0.5, 0.0}, {0.5, 0.0, 0.0}},
                                {2, {0.0, -1.0, 0.0}, {-1.0, 0.0, 0.0}},
                                {-2, {0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}},
                                {3, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.5}},
                                {-3, {0.0, 0.0, 0.0}, {0.0, 0.0, -0.5}}};
  return corpus::to_two_pi(make_fourier_curve(m));
}
}  // namespace

TEST(Energy, CircleVanishesAtThreeResolutions) {
  const auto c = make_circle(2.0 * kPi);
  for (int n : {256, 512, 1024}) {
    EnergyOptions o;
    o.n_quad = n;
    const auto r = renormalized_energy(c, o);
    EXPECT_LE(std::abs(r.delta), r.quadrature_error + r.cutoff_remainder_bound) << n;
  }
}

TEST(Energy, EllipseIsPositiveAndMatchesPairSum) {
  const auto e = corpus::to_two_pi(ellipse_fourier_curve(2.0));
  const auto r = renormalized_energy(e);
  EXPECT_GT(r.delta, r.quadrature_error + r.cutoff_remainder_bound);
  const double s1 = oracle::energy_pair_sum(e, 2048, r.cutoff_used);
  const double s2 = oracle::energy_pair_sum(e, 4096, r.cutoff_used);
  const double oracle_err = std::abs(s2 - s1);
  EXPECT_NEAR(r.delta, s2,
              r.quadrature_error + r.cutoff_remainder_bound + oracle_err);
}

TEST(Energy, SpaceCurveIsPositiveAndCutoffRobust) {
  const auto t = trefoil();
  ASSERT_EQ(t.dimension(), 3);
  const auto r = renormalized_energy(t);
  EXPECT_GT(r.delta, 0.0);
  for (double f : {0.8, 1.2}) {
    EnergyOptions o;
    o.u_min = f * r.cutoff_used;
    const auto q = renormalized_energy(t, o);
    EXPECT_NEAR(q.delta, r.delta,
                r.quadrature_error + q.quadrature_error + std::max(r.cutoff_remainder_bound,
                                                                   q.cutoff_remainder_bound));
  }
}

TEST(Energy, CauchyInCutoff) {
  const auto e = corpus::to_two_pi(ellipse_fourier_curve(1.5));
  for (double u_min : {1e-2, 1e-3}) {
    EnergyOptions a;
    a.u_min = u_min;
    EnergyOptions b;
    b.u_min = 0.5 * u_min;
    const auto ra = renormalized_energy(e, a);
    const auto rb = renormalized_energy(e, b);
    EXPECT_LE(std::abs(ra.delta - rb.delta),
              ra.cutoff_remainder_bound + ra.quadrature_error + rb.quadrature_error);
  }
}

TEST(Energy, RejectsBadInput) {
  EXPECT_THROW(renormalized_energy(make_stadium(0.3)), DomainError);
  EXPECT_THROW(renormalized_energy(make_regular_polygon(6, 2.0 * kPi)), DomainError);
  EXPECT_THROW(renormalized_energy(make_doubled_segment(2.0 * kPi)), DomainError);
  EnergyOptions o;
  o.u_min = kPi;
  EXPECT_THROW(renormalized_energy(make_circle(2.0 * kPi), o), DomainError);
}

TEST(Energy, ScalesInverselyWithLength) {
  // int int ds ds' / chord scales like L
  const auto e = corpus::to_two_pi(ellipse_fourier_curve(2.0));
  const auto r1 = renormalized_energy(e);
  const auto r2 = renormalized_energy(e.scaled(3.0));
  EXPECT_NEAR(r2.delta, 3.0 * r1.delta, 1e-6 * r1.delta);
}
