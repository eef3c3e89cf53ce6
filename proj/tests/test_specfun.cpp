#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chordmeans/specfun.hpp"
#include "oracles.hpp"

using namespace chordmeans;

TEST(BesselK0, KnownValue) {
  EXPECT_NEAR(bessel_k0(1.0), 0.42102443824070834, 1e-15);
  EXPECT_NEAR(static_cast<double>(oracle::k0_integral(1.0L)), 0.42102443824070834, 1e-16);
}

TEST(BesselK0, AgreesWithIndependentOracle) {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 1e-8 * std::pow(700.0 / 1e-8, i / 999.0);
    const long double ref = x < 0.5 ? oracle::k0_series(x) : oracle::k0_integral(x);
    const double rel = static_cast<double>(std::abs((bessel_k0(x) - ref) / ref));
    worst = std::max(worst, rel);
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(BesselK0, SmallArgumentLimit) {
  const double x = 1e-6;
  EXPECT_NEAR(bessel_k0(x) + std::log(0.5 * x) + std::numbers::egamma, 0.0, 1e-9);
}

TEST(BesselK0, LargeArgumentAsymptotics) {
  const double x = 50.0;
  const double scaled = bessel_k0(x) * std::sqrt(2.0 * x / std::numbers::pi) * std::exp(x);
  EXPECT_NEAR(scaled, 1.0 - 1.0 / (8.0 * x), 1e-3);
  const double series = 1.0 - 1.0 / (8.0 * x) + 9.0 / (128.0 * x * x) -
                        225.0 / (3072.0 * x * x * x) + 11025.0 / (98304.0 * x * x * x * x);
  EXPECT_NEAR(scaled, series, 1e-8);
}

TEST(BesselK0, UnderflowAndDomain) {
  EXPECT_EQ(bessel_k0(800.0), 0.0);
  EXPECT_EQ(bessel_k0(std::numeric_limits<double>::infinity()), 0.0);
  EXPECT_THROW(bessel_k0(0.0), DomainError);
  EXPECT_THROW(bessel_k0(-1.0), DomainError);
  EXPECT_THROW(k0_split(0.0), DomainError);
}

TEST(BesselK0, DecreasingAndConvex) {
  double prev2 = bessel_k0(1e-3);
  double prev = bessel_k0(1e-3 * 1.02);
  for (int i = 2; i < 600; ++i) {
    const double x = 1e-3 * std::pow(1.02, i);
    const double v = bessel_k0(x);
    EXPECT_LT(v, prev) << x;
    prev2 = prev;
    prev = v;
  }
  for (int i = 1; i < 500; ++i) {
    const double h = 0.01;
    const double x = 0.05 + h * i;
    EXPECT_GT(bessel_k0(x - h) - 2.0 * bessel_k0(x) + bessel_k0(x + h), 0.0) << x;
  }
  (void)prev2;
}

TEST(K0Split, Recomposition) {
  for (double x : {1e-6, 0.1, 1.0, 2.0, 5.0, 30.0}) {
    const K0Split s = k0_split(x);
    EXPECT_EQ(s.value, -s.log_part_coefficient * std::log(x) + s.smooth_part);
  }
  for (double x : {0.1, 1.0}) {
    EXPECT_NEAR(k0_split(x).value, bessel_k0(x), 1e-14 * bessel_k0(x));
  }
  // At x = 5 the two parts are ~ 44 in size while K0(5) ~ 3.7e-3, so the
  // recomposition carries ~ eps * 44 of absolute roundoff.
  const K0Split s5 = k0_split(5.0);
  const double scale = s5.log_part_coefficient * std::log(5.0);
  EXPECT_NEAR(s5.value, bessel_k0(5.0), 8.0 * std::numeric_limits<double>::epsilon() * scale);
}

TEST(K0Split, SmallArgumentParts) {
  const K0Split s = k0_split(1e-6);
  EXPECT_NEAR(s.log_part_coefficient, 1.0, 1e-12);
  EXPECT_NEAR(s.smooth_part, 0.115931515658412, 1e-9);
  EXPECT_NEAR(k0_smooth_part_at_zero(), 0.11593151565841244, 1e-16);
}

TEST(BesselI0, KnownValues) {
  EXPECT_DOUBLE_EQ(bessel_i0(0.0), 1.0);
  EXPECT_NEAR(bessel_i0(1.0), 1.2660658777520082, 1e-15);
  EXPECT_NEAR(bessel_i0(5.0) / 27.239871823604442, 1.0, 1e-15);
}
