#pragma once

// Chord p-mean functionals I(Gamma, p, u) = int_0^L |Gamma(s+u) - Gamma(s)|^p ds,
// the circle reference values they are compared against, the Fourier-side
// identities behind the p = 2 case, and the closed forms for the stadium,
// polygon and doubled-segment families.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chordmeans/curve.hpp"
#include "chordmeans/errors.hpp"
#include "chordmeans/fourier.hpp"
#include "chordmeans/quadrature.hpp"
#include "chordmeans/roots.hpp"

namespace chordmeans {

inline constexpr int kDefaultQuadratureNodes = 256;

/// One evaluation of the mean-chord inequality at (p, u).
struct ChordReport {
  double p = 0.0;
  double u = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  /// (rhs - lhs) / rhs for p >= 0, (lhs - rhs) / lhs for p < 0.
  double relative_margin = 0.0;
  /// Quadrature error of lhs, relative to the margin's denominator.
  double quadrature_error_estimate = 0.0;
};

namespace detail {

// Golden-section refinement of a chord minimum inside [lo, hi].
inline std::pair<double, double> refine_chord_minimum(const ArcLengthCurve& curve,
                                                      double u, double lo,
                                                      double hi) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = curve.chord(x1, u);
  double f2 = curve.chord(x2, u);
  for (int iter = 0; iter < 200 && b - a > 1e-15 * curve.length(); ++iter) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = curve.chord(x1, u);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = curve.chord(x2, u);
    }
  }
  const double x = f1 < f2 ? x1 : x2;
  return {x, std::min(f1, f2)};
}

// Positions s in [0, L) with chord(s, u) = 0, located by sampling and
// golden-section refinement.
inline std::vector<double> vanishing_chords(const ArcLengthCurve& curve, double u,
                                            int samples) {
  const double length = curve.length();
  const double h = length / samples;
  std::vector<double> values(samples);
  for (int i = 0; i < samples; ++i) values[i] = curve.chord(i * h, u);
  std::vector<double> zeros;
  for (int i = 0; i < samples; ++i) {
    const double prev = values[(i + samples - 1) % samples];
    const double next = values[(i + 1) % samples];
    if (values[i] <= prev && values[i] < next && values[i] < 0.05 * u) {
      const auto [x, fx] = refine_chord_minimum(curve, u, (i - 1) * h, (i + 1) * h);
      if (fx <= 1e-9 * u) zeros.push_back(wrap_periodic(x, length));
    }
  }
  return zeros;
}

}  // namespace detail

/// Chord p-mean int_0^L chord(s, u)^p ds.
///
/// Smooth (C2) curves use the periodic trapezoidal rule with n_quad nodes.
/// Otherwise the period is cut at every s where s or s + u meets a corner or
/// curvature jump, and at every vanishing chord of a degenerate curve, and each
/// piece is integrated with Gauss-Legendre panels.
inline QuadratureResult chord_pmean(const ArcLengthCurve& curve, double p,
                                    double u,
                                    int n_quad = kDefaultQuadratureNodes) {
  const double length = curve.length();
  if (!(u > 0.0 && u <= 0.5 * length * (1.0 + 1e-14))) {
    throw DomainError("chord_pmean: u must lie in (0, L/2]");
  }
  u = std::min(u, 0.5 * length);
  detail::require(n_quad >= 8, "chord_pmean: n_quad must be at least 8");
  detail::require(std::isfinite(p), "chord_pmean: p must be finite");

  std::vector<double> cuts;
  for (double b : curve.breakpoints()) {
    cuts.push_back(wrap_periodic(b, length));
    cuts.push_back(wrap_periodic(b - u, length));
  }
  const bool degenerate = curve.smoothness() == SmoothnessClass::Degenerate;
  if (degenerate || p < 0.0) {
    const auto zeros =
        detail::vanishing_chords(curve, u, degenerate ? 4096 : 1024);
    if (!zeros.empty() && p < 0.0) {
      throw DomainError("chord_pmean: chord vanishes at s = " +
                        std::to_string(zeros.front()) +
                        "; the integral diverges for p < 0");
    }
    // |chord|^p behaves like |s - z|^p next to a zero z; geometric grading
    // toward z keeps Gauss-Legendre panels exponentially convergent.
    for (double z : zeros) {
      cuts.push_back(z);
      double d = length / 64.0;
      for (int j = 0; j < 20; ++j, d *= 0.15) {
        cuts.push_back(wrap_periodic(z - d, length));
        cuts.push_back(wrap_periodic(z + d, length));
      }
    }
  }

  auto integrand = [&](double s) {
    const double c = curve.chord(s, u);
    if (p < 0.0 && c == 0.0) {
      throw DomainError("chord_pmean: vanishing chord with p < 0");
    }
    return std::pow(c, p);
  };

  if (cuts.empty()) {
    return periodic_trapezoid(integrand, length, n_quad + (n_quad % 2));
  }
  std::sort(cuts.begin(), cuts.end());
  const double origin = cuts.front();
  for (double& c : cuts) c = origin + wrap_periodic(c - origin, length);
  return piecewise_gauss(integrand, origin, origin + length, cuts, n_quad);
}

/// Value attained by the circle of length L:
/// L^{1+p} pi^{-p} sin^p(pi u / L). For p < 0 this is the lower bound
/// pi^{|p|} L^{1-|p|} / sin^{|p|}(pi u / L).
inline double circle_reference(double length, double p, double u) {
  detail::require(length > 0.0, "circle_reference: length must be positive");
  if (!(u > 0.0 && u <= 0.5 * length * (1.0 + 1e-14))) {
    throw DomainError("circle_reference: u must lie in (0, L/2]");
  }
  const double sine = std::sin(std::numbers::pi * std::min(u, 0.5 * length) / length);
  return std::pow(length, 1.0 + p) * std::pow(std::numbers::pi, -p) *
         std::pow(sine, p);
}

/// Compares chord_pmean against circle_reference with the orientation set by
/// the sign of p.
inline ChordReport check_inequality(const ArcLengthCurve& curve, double p,
                                    double u,
                                    int n_quad = kDefaultQuadratureNodes,
                                    double tolerance = 1e-12) {
  const QuadratureResult q = chord_pmean(curve, p, u, n_quad);
  ChordReport r;
  r.p = p;
  r.u = u;
  r.lhs = q.value;
  r.rhs = circle_reference(curve.length(), p, u);
  if (p >= 0.0) {
    r.relative_margin = (r.rhs - r.lhs) / r.rhs;
    r.quadrature_error_estimate = q.error / r.rhs;
  } else {
    r.relative_margin = (r.lhs - r.rhs) / r.lhs;
    r.quadrature_error_estimate = q.error / r.lhs;
  }
  r.satisfied = r.relative_margin >= -(r.quadrature_error_estimate + tolerance);
  return r;
}

/// Parseval form of the p = 2 chord integral of a 2 pi periodic Fourier
/// curve: 8 pi sum_{n != 0} |c_n|^2 sin^2(n u / 2).
inline double chord_square_mean_fourier(const FourierCurve& fc, double u) {
  double sum = 0.0;
  for (int n = 1; n <= fc.max_mode(); ++n) {
    double c2 = 0.0;
    for (const Complex& z : fc.coefficient(n)) c2 += std::norm(z);
    const double s = std::sin(0.5 * n * u);
    sum += 2.0 * c2 * s * s;
  }
  return 8.0 * std::numbers::pi * sum;
}

/// sum_{n != 0} n^2 |c_n|^2 (sin(n u / 2) / (n sin(u / 2)))^2, which is at most
/// 1 for normalized coefficients and equals 1 only for a pure n = +-1 curve.
inline double quadratic_form_lhs(const FourierCurve& fc, double u) {
  if (!(u > 0.0 && u <= std::numbers::pi * (1.0 + 1e-14))) {
    throw DomainError("quadratic_form_lhs: u must lie in (0, pi]");
  }
  const double denom = std::sin(0.5 * u);
  double sum = 0.0;
  for (int n = 1; n <= fc.max_mode(); ++n) {
    double c2 = 0.0;
    for (const Complex& z : fc.coefficient(n)) c2 += std::norm(z);
    const double ratio = std::sin(0.5 * n * u) / denom;
    sum += 2.0 * c2 * ratio * ratio;
  }
  return sum;
}

/// n sin x - |sin n x| for integer n >= 1 and x in (0, pi/2].
inline double sine_bound_margin(int n, double x) {
  detail::require(n >= 1, "sine_bound_margin: n must be a positive integer");
  if (!(x > 0.0 && x <= 0.5 * std::numbers::pi * (1.0 + 1e-15))) {
    throw DomainError("sine_bound_margin: x must lie in (0, pi/2]");
  }
  return n * std::sin(x) - std::abs(std::sin(n * x));
}

struct HolderChain {
  std::vector<double> p;
  /// ((1/L) chord_pmean(p))^{1/p}, same order as p.
  std::vector<double> means;
  /// chord_pmean(-p) * chord_pmean(p) / L^2, each >= 1.
  std::vector<double> schwarz_ratio;
  /// Relative quadrature error bound for each Schwarz ratio.
  std::vector<double> schwarz_error;
  bool nondecreasing = true;
  bool schwarz_holds = true;
};

/// Power means of the chord at fixed u for each p (sorted ascending) and the
/// Schwarz product bound used to pass from p to -p.
inline HolderChain holder_chain(const ArcLengthCurve& curve, double u,
                                std::vector<double> p_list,
                                int n_quad = kDefaultQuadratureNodes) {
  detail::require(!p_list.empty(), "holder_chain: empty p list");
  for (double p : p_list) detail::require(p > 0.0, "holder_chain: every p must be positive");
  std::sort(p_list.begin(), p_list.end());
  const double length = curve.length();
  HolderChain out;
  out.p = p_list;
  for (double p : p_list) {
    const QuadratureResult plus = chord_pmean(curve, p, u, n_quad);
    const QuadratureResult minus = chord_pmean(curve, -p, u, n_quad);
    const double mean = std::pow(plus.value / length, 1.0 / p);
    const double rel_err = plus.error / plus.value + minus.error / minus.value;
    if (!out.means.empty() && mean < out.means.back() * (1.0 - 4.0 * rel_err / p - 1e-13)) {
      out.nondecreasing = false;
    }
    out.means.push_back(mean);
    const double ratio = plus.value * minus.value / (length * length);
    out.schwarz_ratio.push_back(ratio);
    out.schwarz_error.push_back(rel_err);
    if (ratio < 1.0 - rel_err - 1e-13) out.schwarz_holds = false;
  }
  return out;
}

/// Closed form of I at u = pi for the doubled segment of length 2 pi:
/// 4 int_0^{pi/2} (2x)^p dx = 2^{2+p} (pi/2)^{p+1} / (p+1).
inline double doubled_segment_pmean_closed_form(double p) {
  if (!(p > -1.0)) throw DomainError("doubled_segment_pmean_closed_form: p must exceed -1");
  return std::pow(2.0, 2.0 + p) * std::pow(0.5 * std::numbers::pi, p + 1.0) / (p + 1.0);
}

/// Largest root of (pi/2)^p = p + 1: the p beyond which the doubled segment
/// beats the circle at u = pi.
inline double segment_crossover_p() {
  const double log_half_pi = std::log(0.5 * std::numbers::pi);
  // p ln(pi/2) - ln(p + 1) is negative at p = 2 and convex, so the bracket
  // [2, 8] isolates the larger root.
  return solve_bracketed(
      [&](double p) { return p * log_half_pi - std::log1p(p); }, 2.0, 8.0);
}

/// Closed form of d^2 I(stadium(a), p, pi) / da^2 at a = 0.
inline double stadium_second_derivative_closed_form(double p) {
  const double pi = std::numbers::pi;
  return std::pow(2.0, p - 1.0) * p * pi *
         ((pi * pi - 12.0) + (pi * pi - 8.0) * (0.5 * p - 1.0));
}

/// The p at which the closed-form second derivative changes sign, located
/// numerically (the exact value is 8 / (pi^2 - 8)).
inline double stadium_threshold_p() {
  return solve_bracketed(stadium_second_derivative_closed_form, 1.0, 10.0);
}

struct StadiumDerivatives {
  double p = 0.0;
  double h = 0.0;
  double first = 0.0;
  double second = 0.0;
  double closed_form_second = 0.0;
  /// Propagated quadrature noise in the second derivative.
  double noise_estimate = 0.0;
  /// True when the noise exceeds 1e-3 of |second|; the result is still
  /// returned.
  bool noise_exceeds_budget = false;
};

/// One-sided finite differences of a -> I(stadium(a), p, pi) at a = 0,
/// Richardson-extrapolated over steps {h, h/2, h/4}.
inline StadiumDerivatives stadium_derivatives(double p, double h = 1e-2,
                                              int n_quad = 512) {
  detail::require(p > 0.0, "stadium_derivatives: p must be positive");
  if (!(h > 0.0 && h <= 0.1)) throw DomainError("stadium_derivatives: h must lie in (0, 0.1]");
  double noise = 0.0;
  auto f = [&](double a) {
    const QuadratureResult q = chord_pmean(make_stadium(a), p, std::numbers::pi, n_quad);
    noise = std::max(noise, q.error);
    return q.value;
  };
  const double f0 = f(0.0);
  const double fq = f(0.25 * h);
  const double fh2 = f(0.5 * h);
  const double fh = f(h);
  const double f2h = f(2.0 * h);

  auto d2 = [&](double step, double a1, double a2) {
    return (f0 - 2.0 * a1 + a2) / (step * step);
  };
  const double d2_h = d2(h, fh, f2h);
  const double d2_h2 = d2(0.5 * h, fh2, fh);
  const double d2_h4 = d2(0.25 * h, fq, fh2);
  const double r1_h = 2.0 * d2_h2 - d2_h;
  const double r1_h2 = 2.0 * d2_h4 - d2_h2;

  const double d1_h = (fh - f0) / h;
  const double d1_h2 = (fh2 - f0) / (0.5 * h);
  const double d1_h4 = (fq - f0) / (0.25 * h);
  const double e1_h = 2.0 * d1_h2 - d1_h;
  const double e1_h2 = 2.0 * d1_h4 - d1_h2;

  StadiumDerivatives out;
  out.p = p;
  out.h = h;
  out.second = (4.0 * r1_h2 - r1_h) / 3.0;
  out.first = (4.0 * e1_h2 - e1_h) / 3.0;
  out.closed_form_second = stadium_second_derivative_closed_form(p);
  // worst-case amplification of the extrapolation weights at the h/4 level
  out.noise_estimate = 64.0 * noise / (h * h);
  out.noise_exceeds_budget = out.noise_estimate > 1e-3 * std::abs(out.second);
  return out;
}

struct PolygonFit {
  double p = 0.0;
  std::vector<int> m_list;
  /// r(m) = I(polygon(2m), p, pi) / (2^{1+p} pi) - 1.
  std::vector<double> residuals;
  /// Least squares fit r = c4 t^4 + c6 t^6, t = pi / m.
  double c4_fitted = 0.0;
  double c6_fitted = 0.0;
  double fit_rms = 0.0;
  /// p (p - 6) / 5760, the tabulated t^4 coefficient being checked.
  double c4_reference = 0.0;
  /// Fit r = c2 t^2 + c4 t^4 + c6 t^6 (needs three distinct m).
  double c2_full = std::numeric_limits<double>::quiet_NaN();
  double c4_full = std::numeric_limits<double>::quiet_NaN();
  /// Series coefficients of r for the perimeter-2 pi polygon:
  /// c2 = -p/24 and c4 = p (3p - 2) / 1920.
  double c2_series = 0.0;
  double c4_series = 0.0;
};

inline std::vector<int> default_polygon_m_list() { return {8, 12, 16, 24, 32}; }

/// Fits the large-m expansion of I for regular 2m-gons of length 2 pi at
/// u = pi.
inline PolygonFit polygon_expansion_check(double p,
                                          std::vector<int> m_list = default_polygon_m_list(),
                                          int nodes_per_side = 32) {
  detail::require(p > 0.0, "polygon_expansion_check: p must be positive");
  std::sort(m_list.begin(), m_list.end());
  m_list.erase(std::unique(m_list.begin(), m_list.end()), m_list.end());
  for (int m : m_list) detail::require(m >= 4, "polygon_expansion_check: every m must be >= 4");
  if (m_list.size() < 2) {
    throw DomainError("polygon_expansion_check: need at least two distinct m "
                      "for a two-term fit");
  }
  const double pi = std::numbers::pi;
  const double circle = std::pow(2.0, 1.0 + p) * pi;
  PolygonFit out;
  out.p = p;
  out.m_list = m_list;
  out.c4_reference = p * (p - 6.0) / 5760.0;
  out.c2_series = -p / 24.0;
  out.c4_series = p * (3.0 * p - 2.0) / 1920.0;
  const int k = static_cast<int>(m_list.size());
  Eigen::MatrixXd a(k, 2);
  Eigen::MatrixXd a_full(k, 3);
  Eigen::VectorXd r(k);
  for (int i = 0; i < k; ++i) {
    const int m = m_list[i];
    const ArcLengthCurve poly = make_regular_polygon(2 * m, 2.0 * pi);
    const double value = chord_pmean(poly, p, pi, 2 * m * nodes_per_side).value;
    r[i] = value / circle - 1.0;
    out.residuals.push_back(r[i]);
    const double t = pi / m;
    a(i, 0) = std::pow(t, 4);
    a(i, 1) = std::pow(t, 6);
    a_full(i, 0) = t * t;
    a_full(i, 1) = std::pow(t, 4);
    a_full(i, 2) = std::pow(t, 6);
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(r);
  out.c4_fitted = c[0];
  out.c6_fitted = c[1];
  out.fit_rms = std::sqrt((a * c - r).squaredNorm() / k);
  if (k >= 3) {
    const Eigen::VectorXd cf = a_full.colPivHouseholderQr().solve(r);
    out.c2_full = cf[0];
    out.c4_full = cf[1];
  }
  return out;
}

/// Family of closed curves (1 - gamma) e^{is} + Theta(gamma, s) in C with
/// Theta(gamma, .) orthogonal to e^{is}.
struct PerturbationFamily {
  std::string name;
  std::function<Complex(double gamma, double s)> theta;

  Complex at(double gamma, double s) const {
    return (1.0 - gamma) * std::polar(1.0, s) + theta(gamma, s);
  }
};

/// Theta = 0: pure radial contraction of the unit circle.
inline PerturbationFamily radial_family() {
  return {"radial", [](double, double) { return Complex{}; }};
}

/// Theta = gamma (0.3 e^{-is} + 0.2 e^{2is}) + gamma^2 0.1 e^{3is}.
inline PerturbationFamily mixed_mode_family() {
  return {"modes", [](double gamma, double s) {
            return gamma * (0.3 * std::polar(1.0, -s) + 0.2 * std::polar(1.0, 2.0 * s)) +
                   gamma * gamma * 0.1 * std::polar(1.0, 3.0 * s);
          }};
}

struct LocalStability {
  double p = 0.0;
  double u = 0.0;
  double h = 0.0;
  double fd = 0.0;
  double closed_form = 0.0;
  double orthogonality_defect = 0.0;
};

/// d/dgamma I(Gamma(gamma), p, u) at gamma = 0+ by a second-order one-sided
/// difference, next to the closed form -p 2^{1+p} pi |sin(u/2)|^p. I is
/// evaluated in the family's own 2 pi parametrization.
inline LocalStability local_stability_derivative(const PerturbationFamily& family,
                                                 double p, double u,
                                                 double h = 1e-3,
                                                 int n_quad = 512) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (!(u > 0.0 && u < two_pi)) throw DomainError("local_stability_derivative: u must lie in (0, 2 pi)");
  detail::require(h > 0.0 && h <= 0.05, "local_stability_derivative: h must lie in (0, 0.05]");

  double defect = 0.0;
  for (double gamma : {0.0, h, 2.0 * h, 0.1}) {
    Complex proj{};
    double scale = 1.0;
    for (int j = 0; j < n_quad; ++j) {
      const double s = two_pi * j / n_quad;
      const Complex th = family.theta(gamma, s);
      proj += th * std::polar(1.0, -s);
      scale = std::max(scale, std::abs(th));
    }
    defect = std::max(defect, std::abs(proj) / n_quad / scale);
  }
  if (defect > 1e-10) {
    throw DomainError("local_stability_derivative: Theta is not orthogonal to "
                      "e^{is} (defect " + std::to_string(defect) + ")");
  }

  auto integral = [&](double gamma) {
    return periodic_trapezoid(
               [&](double s) {
                 return std::pow(std::abs(family.at(gamma, s + u) - family.at(gamma, s)), p);
               },
               two_pi, n_quad)
        .value;
  };
  LocalStability out;
  out.p = p;
  out.u = u;
  out.h = h;
  out.orthogonality_defect = defect;
  out.fd = (-3.0 * integral(0.0) + 4.0 * integral(h) - integral(2.0 * h)) / (2.0 * h);
  out.closed_form = -p * std::pow(2.0, 1.0 + p) * std::numbers::pi *
                    std::pow(std::abs(std::sin(0.5 * u)), p);
  return out;
}

}  // namespace chordmeans
