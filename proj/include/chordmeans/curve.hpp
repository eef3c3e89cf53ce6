#pragma once

// Closed curves parametrized by arc length, and the named curve families.

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "chordmeans/errors.hpp"
#include "json.hpp"

namespace chordmeans {

inline constexpr int kMaxDimension = 8;

/// A point of R^d, d <= kMaxDimension, stored without heap allocation.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDimension, 1>;

enum class SmoothnessClass { C2, PiecewiseC2, Degenerate };

inline std::string to_string(SmoothnessClass c) {
  switch (c) {
    case SmoothnessClass::C2: return "C2";
    case SmoothnessClass::PiecewiseC2: return "PiecewiseC2";
    case SmoothnessClass::Degenerate: return "Degenerate";
  }
  return "unknown";
}

/// Nonnegative remainder of s modulo period, always in [0, period).
inline double wrap_periodic(double s, double period) {
  double r = std::fmod(s, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

namespace detail {

class CurveShape {
 public:
  virtual ~CurveShape() = default;
  /// Evaluates at s already reduced into [0, length).
  virtual Point at(double s) const = 0;
};

}  // namespace detail

/// Structural data of an arc-length curve besides its point map.
struct CurveInfo {
  int dimension = 2;
  double length = 0.0;
  SmoothnessClass smoothness = SmoothnessClass::C2;
  /// Positions where the tangent jumps (polygon vertices, folds).
  std::vector<double> corners;
  /// Positions where the curvature jumps but the tangent is continuous.
  std::vector<double> curvature_jumps;
  /// Serialized description: {kind, params, dimension, length} or the
  /// coefficient form for trigonometric curves.
  nlohmann::json descriptor;
};

/// Closed unit-speed curve s -> Gamma(s), s in R with period L.
/// Immutable and cheap to copy; copies share the underlying shape.
class ArcLengthCurve {
 public:
  ArcLengthCurve(std::shared_ptr<const detail::CurveShape> shape, CurveInfo info)
      : shape_(std::move(shape)), info_(std::move(info)) {
    std::sort(info_.corners.begin(), info_.corners.end());
    std::sort(info_.curvature_jumps.begin(), info_.curvature_jumps.end());
  }

  int dimension() const { return info_.dimension; }
  double length() const { return info_.length; }
  SmoothnessClass smoothness() const { return info_.smoothness; }
  const std::vector<double>& corners() const { return info_.corners; }
  const std::vector<double>& curvature_jumps() const {
    return info_.curvature_jumps;
  }
  const nlohmann::json& descriptor() const { return info_.descriptor; }

  /// Every position where the curve fails to be C^2, sorted.
  std::vector<double> breakpoints() const {
    std::vector<double> out = info_.corners;
    out.insert(out.end(), info_.curvature_jumps.begin(),
               info_.curvature_jumps.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  Point eval(double s) const {
    return shape_->at(wrap_periodic(s, info_.length));
  }

  /// |Gamma(s + u) - Gamma(s)| for u in (0, L).
  double chord(double s, double u) const {
    if (!(u > 0.0 && u < info_.length))
      throw DomainError("chord: arc length u must lie in (0, L)");
    return (eval(s + u) - eval(s)).norm();
  }

  /// The same curve dilated by factor > 0 (length factor * L).
  ArcLengthCurve scaled(double factor) const;

  /// The same curve rescaled to total length new_length.
  ArcLengthCurve with_length(double new_length) const {
    detail::require(new_length > 0.0, "with_length: length must be positive");
    return scaled(new_length / info_.length);
  }

 private:
  std::shared_ptr<const detail::CurveShape> shape_;
  CurveInfo info_;
};

namespace detail {

class ScaledShape final : public CurveShape {
 public:
  ScaledShape(ArcLengthCurve inner, double factor)
      : inner_(std::move(inner)), factor_(factor) {}
  Point at(double s) const override { return factor_ * inner_.eval(s / factor_); }

 private:
  ArcLengthCurve inner_;
  double factor_;
};

class CircleShape final : public CurveShape {
 public:
  CircleShape(double length, int dim)
      : radius_(length / (2.0 * std::numbers::pi)), dim_(dim) {}
  Point at(double s) const override {
    Point p = Point::Zero(dim_);
    const double phi = s / radius_;
    p[0] = radius_ * std::cos(phi);
    p[1] = radius_ * std::sin(phi);
    return p;
  }

 private:
  double radius_;
  int dim_;
};

// Two straight segments of length 2h joined by semicircles of radius r;
// s = 0 is the midpoint of the lower segment, orientation counterclockwise.
class StadiumShape final : public CurveShape {
 public:
  StadiumShape(double half_segment, double radius)
      : h_(half_segment), r_(radius) {}
  Point at(double s) const override {
    Point p(2);
    const double arc = std::numbers::pi * r_;
    if (s < h_) {
      p << s, -r_;
    } else if (s < h_ + arc) {
      const double phi = -0.5 * std::numbers::pi + (s - h_) / r_;
      p << h_ + r_ * std::cos(phi), r_ * std::sin(phi);
    } else if (s < 3.0 * h_ + arc) {
      p << h_ - (s - h_ - arc), r_;
    } else if (s < 3.0 * h_ + 2.0 * arc) {
      const double phi = 0.5 * std::numbers::pi + (s - 3.0 * h_ - arc) / r_;
      p << -h_ + r_ * std::cos(phi), r_ * std::sin(phi);
    } else {
      p << -h_ + (s - 3.0 * h_ - 2.0 * arc), -r_;
    }
    return p;
  }

 private:
  double h_;
  double r_;
};

class PolygonShape final : public CurveShape {
 public:
  PolygonShape(int sides, double length) : side_(length / sides) {
    const double circumradius = side_ / (2.0 * std::sin(std::numbers::pi / sides));
    vertices_.reserve(sides + 1);
    for (int k = 0; k <= sides; ++k) {
      const double phi = 2.0 * std::numbers::pi * k / sides;
      Point v(2);
      v << circumradius * std::cos(phi), circumradius * std::sin(phi);
      vertices_.push_back(v);
    }
  }
  Point at(double s) const override {
    const int sides = static_cast<int>(vertices_.size()) - 1;
    int k = static_cast<int>(std::floor(s / side_));
    k = std::clamp(k, 0, sides - 1);
    const double t = (s - k * side_) / side_;
    return vertices_[k] + t * (vertices_[k + 1] - vertices_[k]);
  }

 private:
  double side_;
  std::vector<Point> vertices_;
};

class DoubledSegmentShape final : public CurveShape {
 public:
  explicit DoubledSegmentShape(double length) : length_(length) {}
  Point at(double s) const override {
    Point p(2);
    p << (s <= 0.5 * length_ ? s : length_ - s), 0.0;
    return p;
  }

 private:
  double length_;
};

}  // namespace detail

inline ArcLengthCurve ArcLengthCurve::scaled(double factor) const {
  detail::require(factor > 0.0, "scaled: factor must be positive");
  CurveInfo info = info_;
  info.length = factor * info_.length;
  for (double& c : info.corners) c *= factor;
  for (double& c : info.curvature_jumps) c *= factor;
  info.descriptor["length"] = info.length;
  if (factor == 1.0) return ArcLengthCurve(shape_, std::move(info));
  return ArcLengthCurve(std::make_shared<detail::ScaledShape>(*this, factor),
                        std::move(info));
}

/// Planar circle of length L embedded in the first two coordinates of R^d.
inline ArcLengthCurve make_circle(double length, int dimension = 2) {
  detail::require(length > 0.0, "make_circle: length must be positive");
  detail::require(dimension >= 2 && dimension <= kMaxDimension,
                  "make_circle: dimension must be in [2, 8]");
  CurveInfo info;
  info.dimension = dimension;
  info.length = length;
  info.smoothness = SmoothnessClass::C2;
  info.descriptor = {{"kind", "circle"},
                     {"params", nlohmann::json::object()},
                     {"dimension", dimension},
                     {"length", length}};
  return ArcLengthCurve(std::make_shared<detail::CircleShape>(length, dimension),
                        std::move(info));
}

/// Stadium of total length L (default 2 pi) whose straight sides have length
/// a * L / 2 and whose end caps are semicircles of radius (1 - a) L / (2 pi).
inline ArcLengthCurve make_stadium(double a,
                                   double length = 2.0 * std::numbers::pi) {
  detail::require(a >= 0.0 && a < 1.0, "make_stadium: a must lie in [0, 1)");
  detail::require(length > 0.0, "make_stadium: length must be positive");
  const double scale = length / (2.0 * std::numbers::pi);
  const double h = 0.5 * std::numbers::pi * a * scale;
  const double r = (1.0 - a) * scale;
  const double arc = std::numbers::pi * r;
  CurveInfo info;
  info.dimension = 2;
  info.length = length;
  if (a > 0.0) {
    info.smoothness = SmoothnessClass::PiecewiseC2;
    info.curvature_jumps = {h, h + arc, 3.0 * h + arc, 3.0 * h + 2.0 * arc};
  } else {
    info.smoothness = SmoothnessClass::C2;
  }
  info.descriptor = {{"kind", "stadium"},
                     {"params", {{"a", a}}},
                     {"dimension", 2},
                     {"length", length}};
  return ArcLengthCurve(std::make_shared<detail::StadiumShape>(h, r),
                        std::move(info));
}

/// Regular polygon with an even number of sides and perimeter L. Vertex 0
/// sits at s = 0.
inline ArcLengthCurve make_regular_polygon(int sides, double length) {
  detail::require(sides % 2 == 0, "make_regular_polygon: side count must be even");
  detail::require(sides >= 4, "make_regular_polygon: need at least 4 sides");
  detail::require(length > 0.0, "make_regular_polygon: length must be positive");
  CurveInfo info;
  info.dimension = 2;
  info.length = length;
  info.smoothness = SmoothnessClass::PiecewiseC2;
  for (int k = 0; k < sides; ++k) info.corners.push_back(k * length / sides);
  info.descriptor = {{"kind", "polygon"},
                     {"params", {{"sides", sides}}},
                     {"dimension", 2},
                     {"length", length}};
  return ArcLengthCurve(std::make_shared<detail::PolygonShape>(sides, length),
                        std::move(info));
}

/// Segment [0, L/2] on the x axis traversed forward then backward.
inline ArcLengthCurve make_doubled_segment(double length) {
  detail::require(length > 0.0, "make_doubled_segment: length must be positive");
  CurveInfo info;
  info.dimension = 2;
  info.length = length;
  info.smoothness = SmoothnessClass::Degenerate;
  info.corners = {0.0, 0.5 * length};
  info.descriptor = {{"kind", "doubled_segment"},
                     {"params", nlohmann::json::object()},
                     {"dimension", 2},
                     {"length", length}};
  return ArcLengthCurve(std::make_shared<detail::DoubledSegmentShape>(length),
                        std::move(info));
}

/// Free-standing form of ArcLengthCurve::chord.
inline double chord(const ArcLengthCurve& curve, double s, double u) {
  return curve.chord(s, u);
}

}  // namespace chordmeans
