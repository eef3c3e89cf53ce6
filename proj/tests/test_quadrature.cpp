#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chordmeans/quadrature.hpp"

using namespace chordmeans;

TEST(GaussLegendre, LowOrderNodesAndWeights) {
  const auto r2 = gauss_legendre(2);
  EXPECT_NEAR(r2.nodes[0], -1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(r2.weights[1], 1.0, 1e-15);
  const auto r3 = gauss_legendre(3);
  EXPECT_NEAR(r3.nodes[1], 0.0, 1e-15);
  EXPECT_NEAR(r3.weights[0], 5.0 / 9.0, 1e-15);
  EXPECT_NEAR(r3.weights[1], 8.0 / 9.0, 1e-15);
  const auto r1 = gauss_legendre(1);
  EXPECT_NEAR(r1.weights[0], 2.0, 1e-15);
}

TEST(GaussLegendre, ExactForDegree2nMinus1) {
  for (int n : {4, 8, 16, 32}) {
    const auto rule = gauss_legendre(n);
    const int degree = 2 * n - 2;  // even, nonzero integral
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], degree);
    EXPECT_NEAR(sum, 2.0 / (degree + 1), 1e-14) << n;
  }
}

TEST(PeriodicTrapezoid, SpectralForAnalyticIntegrand) {
  // int_0^{2 pi} exp(cos s) ds = 2 pi I0(1)
  const double exact = 2.0 * std::numbers::pi * 1.2660658777520082;
  const auto coarse = periodic_trapezoid([](double s) { return std::exp(std::cos(s)); },
                                         2.0 * std::numbers::pi, 8);
  const auto fine = periodic_trapezoid([](double s) { return std::exp(std::cos(s)); },
                                       2.0 * std::numbers::pi, 32);
  EXPECT_LT(std::abs(coarse.value - exact), 1e-5);
  EXPECT_LT(std::abs(fine.value - exact), 1e-14);
  EXPECT_GE(fine.error, std::abs(fine.value - exact));
}

TEST(PiecewiseGauss, KinksAtBreaksAreIntegratedExactly) {
  auto f = [](double x) { return std::abs(x - 0.3) + std::abs(x - 1.7); };
  const double ref = (0.045 + 1.445) + (1.445 + 0.045);
  const auto q = piecewise_gauss(f, 0.0, 2.0, {0.3, 1.7}, 64);
  EXPECT_NEAR(q.value, ref, 1e-14);
  const auto blind = piecewise_gauss(f, 0.0, 2.0, {}, 64);
  EXPECT_GT(std::abs(blind.value - ref), 1e-8);
}

TEST(PiecewiseGauss, RejectsEmptyInterval) {
  EXPECT_THROW(piecewise_gauss([](double) { return 1.0; }, 1.0, 1.0, {}, 16), DomainError);
}
