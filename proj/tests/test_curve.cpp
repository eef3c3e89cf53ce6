#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chordmeans/curve.hpp"

using namespace chordmeans;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Circle, ChordValues) {
  const auto c = make_circle(2.0 * kPi);
  EXPECT_NEAR(c.chord(0.3, kPi), 2.0, 1e-15);
  EXPECT_NEAR(c.chord(1.1, 0.5 * kPi), std::sqrt(2.0), 1e-15);
  const auto c3 = make_circle(4.0 * kPi, 3);
  EXPECT_EQ(c3.dimension(), 3);
  EXPECT_NEAR(c3.chord(0.0, 2.0 * kPi), 4.0, 1e-14);
  EXPECT_EQ(c3.eval(1.0)[2], 0.0);
  EXPECT_EQ(c.smoothness(), SmoothnessClass::C2);
}

TEST(Circle, RejectsBadArguments) {
  EXPECT_THROW(make_circle(0.0), DomainError);
  EXPECT_THROW(make_circle(-1.0), DomainError);
  EXPECT_THROW(make_circle(1.0, 1), DomainError);
}

TEST(Stadium, ZeroParameterIsTheCircleUpToRotation) {
  const auto st = make_stadium(0.0);
  const auto c = make_circle(2.0 * kPi);
  for (int i = 0; i < 50; ++i) {
    const double s = 0.1257 * i;
    // stadium starts at the bottom point, circle at (1, 0)
    EXPECT_NEAR((st.eval(s) - c.eval(s - 0.5 * kPi)).norm(), 0.0, 1e-14);
  }
}

TEST(Stadium, GeometryAtHalf) {
  const auto st = make_stadium(0.5);
  EXPECT_DOUBLE_EQ(st.length(), 2.0 * kPi);
  EXPECT_EQ(st.smoothness(), SmoothnessClass::PiecewiseC2);
  EXPECT_TRUE(st.corners().empty());
  ASSERT_EQ(st.curvature_jumps().size(), 4u);
  // segments have length pi/2, caps radius 1/2
  EXPECT_NEAR(st.curvature_jumps()[0], 0.25 * kPi, 1e-15);
  EXPECT_NEAR(st.curvature_jumps()[1] - st.curvature_jumps()[0], 0.5 * kPi, 1e-15);
  EXPECT_NEAR(st.chord(0.0, kPi), 1.0, 1e-14);
  EXPECT_NEAR(st.eval(2.0 * kPi - 1e-12)[0], st.eval(0.0)[0], 1e-11);
  EXPECT_THROW(make_stadium(1.0), DomainError);
  EXPECT_THROW(make_stadium(-0.1), DomainError);
}

TEST(Polygon, SquareAndHexagon) {
  const auto sq = make_regular_polygon(4, 2.0 * kPi);
  EXPECT_NEAR(sq.chord(0.0, kPi), 0.5 * kPi * std::sqrt(2.0), 1e-14);
  EXPECT_EQ(sq.corners().size(), 4u);
  const auto hex = make_regular_polygon(6, 2.0 * kPi);
  EXPECT_NEAR(hex.eval(0.0).norm(), kPi / 3.0, 1e-15);
  EXPECT_NEAR((hex.eval(kPi / 3.0) - hex.eval(0.0)).norm(), kPi / 3.0, 1e-15);
  EXPECT_THROW(make_regular_polygon(5, 1.0), DomainError);
  EXPECT_THROW(make_regular_polygon(2, 1.0), DomainError);
}

TEST(Polygon, ConvergesToCircle) {
  double prev = 1.0;
  for (int sides : {8, 32, 128}) {
    const auto poly = make_regular_polygon(sides, 2.0 * kPi);
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) worst = std::max(worst, std::abs(poly.eval(0.0157 * i).norm() - 1.0));
    EXPECT_LT(worst, prev);
    prev = worst;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(DoubledSegment, Chords) {
  const auto seg = make_doubled_segment(2.0 * kPi);
  EXPECT_EQ(seg.smoothness(), SmoothnessClass::Degenerate);
  EXPECT_NEAR(seg.chord(0.5 * kPi, kPi), 0.0, 1e-15);
  EXPECT_NEAR(seg.chord(0.0, kPi), kPi, 1e-15);
  EXPECT_NEAR(seg.chord(0.25 * kPi, kPi), 0.5 * kPi, 1e-14);
  EXPECT_THROW(make_doubled_segment(0.0), DomainError);
}

TEST(AllCurves, ChordBoundsSymmetryAndScaling) {
  const double L = 2.0 * kPi;
  const std::vector<ArcLengthCurve> curves = {make_circle(L), make_stadium(0.3),
                                              make_regular_polygon(8, L),
                                              make_doubled_segment(L)};
  for (const auto& c : curves) {
    const auto big = c.scaled(2.5);
    EXPECT_DOUBLE_EQ(big.length(), 2.5 * L);
    for (int i = 0; i < 40; ++i) {
      const double s = -3.0 + 0.37 * i;
      for (int k = 1; k < 20; ++k) {
        const double u = L * k / 20.0;
        const double ch = c.chord(s, u);
        EXPECT_GE(ch, 0.0);
        EXPECT_LE(ch, std::min(u, L - u) * (1.0 + 1e-14) + 1e-15);
        EXPECT_NEAR(ch, c.chord(s + u, L - u), 1e-13);
        EXPECT_NEAR(big.chord(2.5 * s, 2.5 * u), 2.5 * ch, 1e-13);
      }
    }
    EXPECT_THROW(c.chord(0.0, 0.0), DomainError);
    EXPECT_THROW(c.chord(0.0, L), DomainError);
  }
}

TEST(AllCurves, UnitSpeedAwayFromCorners) {
  const auto st = make_stadium(0.4);
  for (int i = 0; i < 100; ++i) {
    const double s = 0.0611 * i + 0.013;
    const double h = 1e-6;
    const double ratio = st.chord(s, h) / h;
    EXPECT_LE(ratio, 1.0 + 1e-9);
    EXPECT_GE(ratio, 1.0 - 1e-9);
  }
}

TEST(Wrap, NonnegativeRemainder) {
  EXPECT_DOUBLE_EQ(wrap_periodic(-0.5, 2.0), 1.5);
  EXPECT_DOUBLE_EQ(wrap_periodic(4.5, 2.0), 0.5);
  EXPECT_GE(wrap_periodic(-1e-300, 2.0), 0.0);
  EXPECT_LT(wrap_periodic(-1e-300, 2.0), 2.0);
}
