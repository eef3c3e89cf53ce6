#pragma once

// Fourier-coefficient curves Gamma(t) = sum_{n != 0} c_n e^{int} on [0, 2 pi)
// and their reparametrization to unit speed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include "chordmeans/curve.hpp"
#include "chordmeans/errors.hpp"

namespace chordmeans {

using Complex = std::complex<double>;

/// One coefficient c_n in C^d, split into real and imaginary parts.
struct FourierMode {
  int n = 0;
  std::vector<double> re;
  std::vector<double> im;
};

/// Closed curve with period 2 pi given by finitely many Fourier modes.
/// Only the n > 0 half is stored; c_{-n} = conj(c_n). The coefficients are
/// normalized so that sum_{n != 0} n^2 |c_n|^2 = 1.
class FourierCurve {
 public:
  FourierCurve(int dimension, std::vector<std::vector<Complex>> positive,
               double applied_scale)
      : dimension_(dimension),
        positive_(std::move(positive)),
        applied_scale_(applied_scale) {}

  int dimension() const { return dimension_; }
  int max_mode() const { return static_cast<int>(positive_.size()); }
  /// Factor applied by make_fourier_curve to restore unit mean-square speed.
  double applied_scale() const { return applied_scale_; }

  /// c_n for n != 0 (c_{-n} returned as the conjugate of c_n).
  std::vector<Complex> coefficient(int n) const {
    std::vector<Complex> out(dimension_, Complex{});
    const int m = std::abs(n);
    if (n == 0 || m > max_mode()) return out;
    for (int j = 0; j < dimension_; ++j) {
      out[j] = n > 0 ? positive_[m - 1][j] : std::conj(positive_[m - 1][j]);
    }
    return out;
  }

  /// sum_{n != 0} n^2 |c_n|^2.
  double mean_square_speed() const {
    double sum = 0.0;
    for (int n = 1; n <= max_mode(); ++n) {
      for (const Complex& c : positive_[n - 1]) sum += 2.0 * n * n * std::norm(c);
    }
    return sum;
  }

  Point eval(double t) const {
    Point p = Point::Zero(dimension_);
    for (int n = 1; n <= max_mode(); ++n) {
      const Complex e = std::polar(1.0, n * t);
      for (int j = 0; j < dimension_; ++j) p[j] += 2.0 * (positive_[n - 1][j] * e).real();
    }
    return p;
  }

  Point velocity(double t) const {
    Point p = Point::Zero(dimension_);
    for (int n = 1; n <= max_mode(); ++n) {
      const Complex e = std::polar(1.0, n * t) * Complex(0.0, n);
      for (int j = 0; j < dimension_; ++j) p[j] += 2.0 * (positive_[n - 1][j] * e).real();
    }
    return p;
  }

  /// All modes with both signs, skipping zero coefficients.
  std::vector<FourierMode> modes() const {
    std::vector<FourierMode> out;
    for (int n = -max_mode(); n <= max_mode(); ++n) {
      if (n == 0) continue;
      const auto c = coefficient(n);
      bool nonzero = false;
      for (const Complex& z : c) nonzero = nonzero || std::abs(z) > 0.0;
      if (!nonzero) continue;
      FourierMode m;
      m.n = n;
      for (const Complex& z : c) {
        m.re.push_back(z.real());
        m.im.push_back(z.imag());
      }
      out.push_back(std::move(m));
    }
    return out;
  }

 private:
  int dimension_;
  std::vector<std::vector<Complex>> positive_;
  double applied_scale_;
};

/// Validates the reality constraint c_{-n} = conj(c_n) (relative tolerance
/// tol against the largest coefficient), rejects a nonzero c_0 and the all
/// zero curve, and rescales to sum n^2 |c_n|^2 = 1.
inline FourierCurve make_fourier_curve(const std::vector<FourierMode>& modes,
                                       double tol = 1e-12) {
  detail::require(!modes.empty(), "make_fourier_curve: no coefficients");
  const int dim = static_cast<int>(modes.front().re.size());
  detail::require(dim >= 2 && dim <= kMaxDimension,
                  "make_fourier_curve: dimension must be in [2, 8]");
  std::map<int, std::vector<Complex>> by_n;
  double largest = 0.0;
  for (const FourierMode& m : modes) {
    detail::require(static_cast<int>(m.re.size()) == dim &&
                        static_cast<int>(m.im.size()) == dim,
                    "make_fourier_curve: inconsistent coefficient dimension");
    std::vector<Complex> c(dim);
    for (int j = 0; j < dim; ++j) {
      c[j] = Complex(m.re[j], m.im[j]);
      largest = std::max(largest, std::abs(c[j]));
    }
    auto [it, inserted] = by_n.emplace(m.n, c);
    if (!inserted) {
      for (int j = 0; j < dim; ++j) it->second[j] += c[j];
    }
  }
  detail::require(largest > 0.0, "make_fourier_curve: all coefficients are zero");
  if (auto it = by_n.find(0); it != by_n.end()) {
    for (const Complex& z : it->second) {
      detail::require(std::abs(z) <= tol * largest,
                      "make_fourier_curve: c_0 must be absent or zero");
    }
  }
  int n_max = 0;
  for (const auto& [n, c] : by_n) n_max = std::max(n_max, std::abs(n));

  const std::vector<Complex> zero(dim, Complex{});
  std::vector<std::vector<Complex>> positive(n_max, zero);
  for (int n = 1; n <= n_max; ++n) {
    const auto plus = by_n.count(n) ? by_n.at(n) : zero;
    const auto minus = by_n.count(-n) ? by_n.at(-n) : zero;
    for (int j = 0; j < dim; ++j) {
      if (std::abs(minus[j] - std::conj(plus[j])) > tol * largest) {
        throw DomainError("make_fourier_curve: reality constraint c_{-n} = "
                          "conj(c_n) violated at n = " + std::to_string(n));
      }
      positive[n - 1][j] = 0.5 * (plus[j] + std::conj(minus[j]));
    }
  }
  while (!positive.empty() &&
         std::all_of(positive.back().begin(), positive.back().end(),
                     [](const Complex& z) { return z == Complex{}; })) {
    positive.pop_back();
  }
  FourierCurve raw(dim, positive, 1.0);
  const double ms = raw.mean_square_speed();
  double scale = 1.0;
  if (std::abs(ms - 1.0) > 4.0 * std::numeric_limits<double>::epsilon()) {
    scale = 1.0 / std::sqrt(ms);
    for (auto& c : positive)
      for (Complex& z : c) z *= scale;
  }
  return FourierCurve(dim, std::move(positive), scale);
}

namespace detail {

// Real trigonometric interpolant of a closed curve with period L:
// Gamma(s) = mean + sum_k cos_k cos(k w s) + sin_k sin(k w s), w = 2 pi / L.
class TrigShape final : public CurveShape {
 public:
  TrigShape(double length, Eigen::VectorXd mean, Eigen::MatrixXd cos_coef,
            Eigen::MatrixXd sin_coef)
      : omega_(2.0 * std::numbers::pi / length),
        mean_(std::move(mean)),
        cos_(std::move(cos_coef)),
        sin_(std::move(sin_coef)) {}

  Point at(double s) const override {
    const int dim = static_cast<int>(mean_.size());
    const int modes = static_cast<int>(cos_.cols());
    double acc[kMaxDimension] = {};
    const double c1 = std::cos(omega_ * s);
    const double s1 = std::sin(omega_ * s);
    double ck = c1;
    double sk = s1;
    for (int k = 0; k < modes; ++k) {
      for (int j = 0; j < dim; ++j) acc[j] += cos_(j, k) * ck + sin_(j, k) * sk;
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
    Point p(dim);
    for (int j = 0; j < dim; ++j) p[j] = mean_[j] + acc[j];
    return p;
  }

  Point derivative(double s) const {
    const int dim = static_cast<int>(mean_.size());
    const int modes = static_cast<int>(cos_.cols());
    Point p = Point::Zero(dim);
    const double c1 = std::cos(omega_ * s);
    const double s1 = std::sin(omega_ * s);
    double ck = c1;
    double sk = s1;
    for (int k = 0; k < modes; ++k) {
      const double kw = (k + 1) * omega_;
      for (int j = 0; j < dim; ++j) p[j] += kw * (sin_(j, k) * ck - cos_(j, k) * sk);
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
    return p;
  }

  int modes() const { return static_cast<int>(cos_.cols()); }

  /// Largest coefficient norm among the top quarter of the modes.
  double tail_norm() const {
    const int modes = static_cast<int>(cos_.cols());
    double out = 0.0;
    for (int k = modes - modes / 4; k < modes; ++k) {
      out = std::max(out, std::hypot(cos_.col(k).norm(), sin_.col(k).norm()));
    }
    return out;
  }

 private:
  double omega_;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cos_;
  Eigen::MatrixXd sin_;
};

/// Interpolant through samples taken at s_j = j L / M.
inline std::shared_ptr<TrigShape> trig_shape_from_samples(
    const std::vector<Point>& samples, double length) {
  const int m = static_cast<int>(samples.size());
  require(m >= 4 && m % 2 == 0, "trig interpolation needs an even sample count");
  const int dim = static_cast<int>(samples.front().size());
  Eigen::FFT<double> fft;
  Eigen::VectorXd mean(dim);
  const int modes = m / 2;
  Eigen::MatrixXd cos_coef = Eigen::MatrixXd::Zero(dim, modes);
  Eigen::MatrixXd sin_coef = Eigen::MatrixXd::Zero(dim, modes);
  std::vector<Complex> in(m);
  std::vector<Complex> out;
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < m; ++i) in[i] = Complex(samples[i][j], 0.0);
    fft.fwd(out, in);
    mean[j] = out[0].real() / m;
    for (int k = 1; k < modes; ++k) {
      cos_coef(j, k - 1) = 2.0 * out[k].real() / m;
      sin_coef(j, k - 1) = -2.0 * out[k].imag() / m;
    }
    cos_coef(j, modes - 1) = out[modes].real() / m;
  }
  // Trailing modes below roundoff only cost evaluation time.
  double largest = 0.0;
  for (int k = 0; k < modes; ++k)
    largest = std::max(largest, std::hypot(cos_coef.col(k).norm(), sin_coef.col(k).norm()));
  int keep = modes;
  while (keep > 1 && std::hypot(cos_coef.col(keep - 1).norm(),
                                sin_coef.col(keep - 1).norm()) <= 1e-17 * largest) {
    --keep;
  }
  return std::make_shared<TrigShape>(length, std::move(mean),
                                     Eigen::MatrixXd(cos_coef.leftCols(keep)),
                                     Eigen::MatrixXd(sin_coef.leftCols(keep)));
}

// Arc length S(t) of a 2 pi periodic parametrization from its speed samples.
class ArcLengthTable {
 public:
  explicit ArcLengthTable(const std::vector<double>& speed) {
    const int m = static_cast<int>(speed.size());
    Eigen::FFT<double> fft;
    std::vector<Complex> in(speed.begin(), speed.end());
    std::vector<Complex> out;
    fft.fwd(out, in);
    mean_ = out[0].real() / m;
    const int modes = m / 2;
    alpha_.resize(modes);
    beta_.resize(modes);
    for (int k = 1; k < modes; ++k) {
      alpha_[k - 1] = 2.0 * out[k].real() / m;
      beta_[k - 1] = -2.0 * out[k].imag() / m;
    }
    alpha_[modes - 1] = out[modes].real() / m;
    beta_[modes - 1] = 0.0;
  }

  double total() const { return 2.0 * std::numbers::pi * mean_; }

  /// S(t) and S'(t).
  std::pair<double, double> eval(double t) const {
    double s = mean_ * t;
    double v = mean_;
    const double c1 = std::cos(t);
    const double s1 = std::sin(t);
    double ck = c1;
    double sk = s1;
    for (std::size_t i = 0; i < alpha_.size(); ++i) {
      const double k = static_cast<double>(i + 1);
      s += (alpha_[i] * sk - beta_[i] * (ck - 1.0)) / k;
      v += alpha_[i] * ck + beta_[i] * sk;
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
    return {s, v};
  }

  /// Inverse of S on [0, 2 pi]: safeguarded Newton.
  double invert(double target) const {
    double lo = 0.0;
    double hi = 2.0 * std::numbers::pi;
    double t = target / mean_;
    for (int iter = 0; iter < 100; ++iter) {
      if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
      const auto [s, v] = eval(t);
      const double f = s - target;
      if (f > 0.0) hi = t; else lo = t;
      const double step = f / v;
      const double next = t - step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(t))) return next;
      t = next;
      if (hi - lo < 1e-15) break;
    }
    return t;
  }

 private:
  double mean_ = 0.0;
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

}  // namespace detail

/// Serialized coefficient list used by the "fourier" curve kind.
inline nlohmann::json fourier_coefficients_json(const FourierCurve& fc) {
  nlohmann::json arr = nlohmann::json::array();
  for (const FourierMode& m : fc.modes()) {
    arr.push_back({{"n", m.n}, {"re", m.re}, {"im", m.im}});
  }
  return arr;
}

struct RealizeOptions {
  int n_samples = 256;
  double tol = 1e-10;
  int max_samples = 1 << 15;
};

/// Reparametrizes a Fourier curve by arc length. The result is a
/// trigonometric interpolant through Gamma(t(s_j)) at equispaced arc-length
/// nodes; its length is the arc length of the Fourier curve, which is 2 pi
/// only when the curve already has unit speed.
inline ArcLengthCurve realize(const FourierCurve& fc, RealizeOptions opt = {}) {
  detail::require(opt.n_samples >= 8 * fc.max_mode(),
                  "realize: n_samples must be at least 8 * N_max");
  detail::require(opt.tol > 0.0, "realize: tol must be positive");
  const double two_pi = 2.0 * std::numbers::pi;

  {
    // Vanishing speed makes the inverse map t(s) singular.
    const int probe = std::max(4 * opt.n_samples, 64 * std::max(fc.max_mode(), 1));
    double vmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < probe; ++i) vmin = std::min(vmin, fc.velocity(two_pi * i / probe).norm());
    if (vmin < 1e-8) {
      throw DomainError("realize: speed |Gamma'(t)| vanishes; arc-length "
                        "reparametrization is singular");
    }
  }

  int m = opt.n_samples + (opt.n_samples % 2);
  for (; m <= opt.max_samples; m *= 2) {
    std::vector<double> speed(m);
    for (int i = 0; i < m; ++i) speed[i] = fc.velocity(two_pi * i / m).norm();
    const detail::ArcLengthTable table(speed);
    const double length = table.total();

    std::vector<Point> samples(m);
    for (int i = 0; i < m; ++i) {
      samples[i] = fc.eval(table.invert(length * i / m));
    }
    auto shape = detail::trig_shape_from_samples(samples, length);

    double err = 0.0;
    for (int i = 0; i < m; ++i) {
      const double s_mid = length * (i + 0.5) / m;
      const double t_mid = table.invert(s_mid);
      err = std::max(err, (shape->at(s_mid) - fc.eval(t_mid)).norm() / length);
      const double t_half = two_pi * (i + 0.5) / m;
      err = std::max(err, std::abs(table.eval(t_half).second -
                                   fc.velocity(t_half).norm()) /
                              (length / two_pi));
    }
    if (err <= opt.tol) {
      CurveInfo info;
      info.dimension = fc.dimension();
      info.length = length;
      info.smoothness = SmoothnessClass::C2;
      info.descriptor = {{"kind", "fourier"},
                         {"coefficients", fourier_coefficients_json(fc)},
                         {"dimension", fc.dimension()},
                         {"length", length}};
      return ArcLengthCurve(shape, std::move(info));
    }
  }
  throw NumericalError("realize: reparametrization did not reach tolerance");
}

inline ArcLengthCurve realize(const FourierCurve& fc, int n_samples,
                              double tol = 1e-10) {
  RealizeOptions opt;
  opt.n_samples = n_samples;
  opt.tol = tol;
  return realize(fc, opt);
}

/// Planar ellipse with the given axis ratio (>= 1) as a Fourier curve.
inline FourierCurve ellipse_fourier_curve(double axis_ratio) {
  detail::require(axis_ratio >= 1.0, "ellipse: axis ratio must be >= 1");
  FourierMode plus{1, {0.5 * axis_ratio, 0.0}, {0.0, -0.5}};
  FourierMode minus{-1, {0.5 * axis_ratio, 0.0}, {0.0, 0.5}};
  return make_fourier_curve({plus, minus});
}

/// The unit circle's coefficients c_{+-1} = (1/2, -+ i/2).
inline FourierCurve circle_fourier_curve() { return ellipse_fourier_curve(1.0); }

}  // namespace chordmeans
