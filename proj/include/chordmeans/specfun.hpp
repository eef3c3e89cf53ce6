#pragma once

// Modified Bessel functions of order zero.
//
// K0 is evaluated in two regimes split at x = 2:
//   x <= 2 : K0(x) = -(ln(x/2) + gamma_E) I0(x) + sum_{k>=1} (x^2/4)^k H_k / (k!)^2
//   x >  2 : Temme's second continued fraction evaluated with Steed's
//            algorithm, K0(x) = sqrt(pi / 2x) e^{-x} / S.
// Both regimes reach ~1e-15 relative accuracy on (0, 700].

#include <cmath>
#include <limits>
#include <numbers>

#include "chordmeans/errors.hpp"

namespace chordmeans {

/// I0(x) by its power series. All terms are positive, so the series is
/// stable for any argument that does not overflow.
inline double bessel_i0(double x) {
  const double t = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= t / (static_cast<double>(k) * k);
    sum += term;
    if (term < std::numeric_limits<double>::epsilon() * 0.25 * sum) break;
  }
  return sum;
}

/// Decomposition K0(x) = -log_part_coefficient * ln(x) + smooth_part, where
/// log_part_coefficient = I0(x) and both parts are entire functions of x^2.
struct K0Split {
  double x = 0.0;
  double log_part_coefficient = 0.0;
  double smooth_part = 0.0;
  double value = 0.0;
};

namespace detail {

// sum_{k>=1} (x^2/4)^k H_k / (k!)^2 together with I0 from the same series.
inline void k0_small_series(double x, double& i0, double& harmonic_sum) {
  const double t = 0.25 * x * x;
  double term = 1.0;
  double h = 0.0;
  i0 = 1.0;
  harmonic_sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= t / (static_cast<double>(k) * k);
    h += 1.0 / k;
    i0 += term;
    harmonic_sum += term * h;
    if (term * h < std::numeric_limits<double>::epsilon() * 0.1 * harmonic_sum &&
        term < std::numeric_limits<double>::epsilon() * 0.1 * i0)
      break;
  }
}

inline double k0_continued_fraction(double x) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 1; i < 10000; ++i) {
    a -= 2 * i;
    c = -a * c / (i + 1.0);
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 0.5 * eps) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) / s;
}

inline constexpr double kK0Crossover = 2.0;

}  // namespace detail

/// Macdonald function K0(x) for x > 0. Underflows to zero past x ~ 745.
inline double bessel_k0(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0: argument must be positive");
  if (std::isinf(x)) return 0.0;
  if (x <= detail::kK0Crossover) {
    double i0 = 0.0;
    double hs = 0.0;
    detail::k0_small_series(x, i0, hs);
    return -(std::log(0.5 * x) + std::numbers::egamma) * i0 + hs;
  }
  return detail::k0_continued_fraction(x);
}

inline K0Split k0_split(double x) {
  if (!(x > 0.0)) throw DomainError("k0_split: argument must be positive");
  K0Split out;
  out.x = x;
  if (x <= detail::kK0Crossover) {
    double i0 = 0.0;
    double hs = 0.0;
    detail::k0_small_series(x, i0, hs);
    out.log_part_coefficient = i0;
    out.smooth_part = (std::numbers::ln2 - std::numbers::egamma) * i0 + hs;
  } else {
    out.log_part_coefficient = bessel_i0(x);
    out.smooth_part =
        detail::k0_continued_fraction(x) + out.log_part_coefficient * std::log(x);
  }
  out.value = -out.log_part_coefficient * std::log(x) + out.smooth_part;
  return out;
}

/// Smooth part of the split at x = 0, ln 2 - gamma_E.
inline constexpr double k0_smooth_part_at_zero() {
  return std::numbers::ln2 - std::numbers::egamma;
}

}  // namespace chordmeans
