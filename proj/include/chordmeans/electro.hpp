#pragma once

// Renormalized electrostatic energy of a uniformly charged closed loop:
//   delta(Gamma) = 2 int_0^{L/2} du int_0^L ds [ 1/|Gamma(s+u) - Gamma(s)|
//                                              - (pi/L) csc(pi u / L) ].

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chordmeans/curve.hpp"
#include "chordmeans/errors.hpp"
#include "chordmeans/quadrature.hpp"

namespace chordmeans {

struct EnergyResult {
  double delta = 0.0;
  double cutoff_used = 0.0;
  double quadrature_error = 0.0;
  /// Bound on the neglected part of the u integral below cutoff_used.
  double cutoff_remainder_bound = 0.0;
  int n_quad = 0;
};

struct EnergyOptions {
  /// Lower end of the u integral; <= 0 selects L * 1e-4.
  double u_min = 0.0;
  /// Trapezoid nodes in s; <= 0 doubles from 256 until the quadrature error
  /// is below the cutoff bound.
  int n_quad = 0;
  /// Gauss-Legendre nodes in u.
  int n_outer = 128;
};

namespace detail {

// int_0^L (kappa^2 - kappa_circle^2) ds with kappa from second differences,
// returned as {signed integral, integral of the absolute value}.
inline std::pair<double, double> curvature_excess(const ArcLengthCurve& curve,
                                                  int samples = 1024) {
  const double length = curve.length();
  const double h = length / samples;
  const double step = length * 1e-3;
  const double kc = 2.0 * std::numbers::pi / length;
  double signed_sum = 0.0;
  double abs_sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double s = i * h;
    const Point d2 = (curve.eval(s + step) - 2.0 * curve.eval(s) + curve.eval(s - step)) /
                     (step * step);
    const double excess = d2.squaredNorm() - kc * kc;
    signed_sum += excess * h;
    abs_sum += std::abs(excess) * h;
  }
  return {signed_sum, abs_sum};
}

}  // namespace detail

/// delta(Gamma) for a C2 curve. The integrand difference is formed in one
/// expression, (c_ref - c) / (c c_ref); the u < u_min part is bounded by
/// u_min^2 / 12 * int |kappa^2 - (2 pi / L)^2| ds (twice the leading term).
inline EnergyResult renormalized_energy(const ArcLengthCurve& curve,
                                        EnergyOptions opt = {}) {
  if (curve.smoothness() != SmoothnessClass::C2) {
    throw DomainError("renormalized_energy: curve must be of class C2, got " +
                      to_string(curve.smoothness()));
  }
  const double length = curve.length();
  const double u_min = opt.u_min > 0.0 ? opt.u_min : 1e-4 * length;
  if (u_min > 0.1 * length) {
    throw DomainError("renormalized_energy: u_min must not exceed L/10");
  }
  detail::require(opt.n_outer >= 16, "renormalized_energy: n_outer must be at least 16");
  const double half = 0.5 * length;
  const double radius = length / (2.0 * std::numbers::pi);

  double diameter = 0.0;
  for (int i = 0; i < 64; ++i) diameter = std::max(diameter, curve.eval(length * i / 64.0).norm());
  diameter *= 2.0;

  auto evaluate = [&](int n_quad) {
    double inner_error = 0.0;
    auto g = [&](double u) {
      const double ref = 2.0 * radius * std::sin(u / (2.0 * radius));
      const QuadratureResult q = periodic_trapezoid(
          [&](double s) {
            const double c = curve.chord(s, u);
            return (ref - c) / (c * ref);
          },
          length, n_quad);
      inner_error = std::max(inner_error, q.error);
      return q.value;
    };
    QuadratureResult outer = piecewise_gauss(g, u_min, half, {}, opt.n_outer);
    // chords carry ~ eps * diameter absolute error, amplified by 1/u^2
    const double roundoff = 16.0 * std::numeric_limits<double>::epsilon() *
                            std::max(diameter, 1.0) * length / u_min;
    EnergyResult r;
    r.delta = 2.0 * outer.value;
    r.quadrature_error = 2.0 * (outer.error + inner_error * (half - u_min)) + roundoff;
    r.n_quad = n_quad;
    return std::pair{r, roundoff};
  };

  const auto [signed_excess, abs_excess] = detail::curvature_excess(curve);
  (void)signed_excess;
  const double cutoff_bound = u_min * u_min * abs_excess / 12.0;

  EnergyResult result;
  if (opt.n_quad > 0) {
    result = evaluate(opt.n_quad + opt.n_quad % 2).first;
  } else {
    for (int n = 256;; n *= 2) {
      const auto [r, roundoff] = evaluate(n);
      result = r;
      if (r.quadrature_error <= std::max(cutoff_bound, 2.0 * roundoff) || n >= 8192) break;
    }
  }
  result.cutoff_used = u_min;
  result.cutoff_remainder_bound = cutoff_bound;
  return result;
}

}  // namespace chordmeans
