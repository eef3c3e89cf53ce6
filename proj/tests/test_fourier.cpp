#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chordmeans/curve.hpp"
#include "chordmeans/fourier.hpp"
#include "oracles.hpp"

using namespace chordmeans;
namespace {
constexpr double kPi = std::numbers::pi;

FourierMode mode(int n, double xr, double xi, double yr, double yi) {
  return {n, {xr, yr}, {xi, yi}};
}

std::vector<FourierMode> with_conjugates(const std::vector<FourierMode>& pos) {
  std::vector<FourierMode> out;
  for (const auto& m : pos) {
    out.push_back(m);
    FourierMode c = m;
    c.n = -m.n;
    for (double& v : c.im) v = -v;
    out.push_back(c);
  }
  return out;
}
}  // namespace

TEST(FourierCurve, CircleAcceptedUnchanged) {
  const auto fc = circle_fourier_curve();
  EXPECT_DOUBLE_EQ(fc.applied_scale(), 1.0);
  EXPECT_NEAR(fc.mean_square_speed(), 1.0, 1e-15);
  EXPECT_NEAR(fc.eval(0.0)[0], 1.0, 1e-15);
  EXPECT_NEAR(fc.eval(0.5 * kPi)[1], 1.0, 1e-15);
}

TEST(FourierCurve, DoubledCoefficientsAreRescaled) {
  const auto fc = make_fourier_curve(with_conjugates({mode(1, 1.0, 0.0, 0.0, -1.0)}));
  EXPECT_NEAR(fc.applied_scale(), 0.5, 1e-15);
  EXPECT_NEAR(fc.mean_square_speed(), 1.0, 1e-15);
}

TEST(FourierCurve, RejectsInvalidCoefficients) {
  EXPECT_THROW(make_fourier_curve({mode(2, 1.0, 0.0, 0.0, 0.0)}), DomainError);
  auto with_c0 = with_conjugates({mode(1, 0.5, 0.0, 0.0, -0.5)});
  with_c0.push_back(mode(0, 0.1, 0.0, 0.0, 0.0));
  EXPECT_THROW(make_fourier_curve(with_c0), DomainError);
  EXPECT_THROW(make_fourier_curve(with_conjugates({mode(1, 0.0, 0.0, 0.0, 0.0)})),
               DomainError);
  EXPECT_THROW(make_fourier_curve({}), DomainError);
}

TEST(FourierCurve, ModesRoundTrip) {
  const auto fc = make_fourier_curve(
      with_conjugates({mode(1, 0.5, 0.0, 0.0, -0.5), mode(3, 0.01, 0.02, -0.03, 0.0)}));
  const auto again = make_fourier_curve(fc.modes());
  EXPECT_DOUBLE_EQ(again.applied_scale(), 1.0);
  for (double t : {0.0, 0.7, 2.9}) EXPECT_NEAR((fc.eval(t) - again.eval(t)).norm(), 0.0, 1e-15);
}

TEST(Realize, CircleGivesUnitSpeedCircle) {
  const auto curve = realize(circle_fourier_curve(), 64, 1e-12);
  EXPECT_NEAR(curve.length(), 2.0 * kPi, 1e-12);
  const auto ref = make_circle(2.0 * kPi);
  for (int i = 0; i < 37; ++i) {
    const double s = 0.17 * i;
    EXPECT_NEAR(curve.chord(s, 1.3), ref.chord(s, 1.3), 1e-12);
    EXPECT_NEAR((curve.eval(s) - ref.eval(s)).norm(), 0.0, 1e-12);
  }
  EXPECT_EQ(curve.descriptor()["kind"], "fourier");
}

TEST(Realize, PerturbedLengthMatchesPolylineAndSpeedIsOne) {
  const auto fc = make_fourier_curve(
      with_conjugates({mode(1, 0.5, 0.0, 0.0, -0.5), mode(3, 0.02, 0.0, 0.0, 0.015)}));
  const auto curve = realize(fc, 256, 1e-11);
  const double poly = oracle::polyline_length([&](double t) { return fc.eval(t); }, 400000);
  EXPECT_NEAR(curve.length(), poly, 1e-9);
  EXPECT_LE(curve.length(), 2.0 * kPi + 1e-12);  // mean |G'| <= rms |G'| = 1
  for (int i = 0; i < 50; ++i) {
    const double s = curve.length() * (i + 0.31) / 50.0;
    const double h = 1e-5;
    EXPECT_NEAR(curve.chord(s - h, 2 * h) / (2 * h), 1.0, 1e-8);
  }
}

TEST(Realize, SpaceCurve) {
  std::vector<FourierMode> pos = {{1, {0.5, 0.0, 0.0}, {0.0, -0.5, 0.0}},
                                  {2, {0.0, 0.0, 0.1}, {0.0, 0.0, 0.05}}};
  const auto fc = make_fourier_curve(with_conjugates(pos));
  const auto curve = realize(fc, 128, 1e-10);
  EXPECT_EQ(curve.dimension(), 3);
  const double poly = oracle::polyline_length([&](double t) { return fc.eval(t); }, 400000);
  EXPECT_NEAR(curve.length(), poly, 1e-9);
}

TEST(Realize, VanishingSpeedIsRejected) {
  // deltoid z = 2 e^{it} + e^{-2it} has cusps
  const auto fc = make_fourier_curve(
      with_conjugates({mode(1, 1.0, 0.0, 0.0, -1.0), mode(2, 0.5, 0.0, 0.0, 0.5)}));
  EXPECT_THROW(realize(fc, 64, 1e-10), DomainError);
}

TEST(Realize, TooFewSamplesRejected) {
  const auto fc = make_fourier_curve(
      with_conjugates({mode(1, 0.5, 0.0, 0.0, -0.5), mode(10, 0.001, 0.0, 0.0, 0.0)}));
  EXPECT_THROW(realize(fc, 64, 1e-10), DomainError);
}
