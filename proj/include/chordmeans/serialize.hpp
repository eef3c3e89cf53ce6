#pragma once

// JSON forms of curves and results, and the textual curve specs accepted by
// the command line ("circle", "stadium:0.5", "polygon:6", "doubled_segment",
// "ellipse:2", or a JSON object).

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "chordmeans/chordfun.hpp"
#include "chordmeans/curve.hpp"
#include "chordmeans/electro.hpp"
#include "chordmeans/errors.hpp"
#include "chordmeans/fourier.hpp"
#include "chordmeans/leakywire.hpp"
#include "chordmeans/search.hpp"
#include "json.hpp"

namespace chordmeans {

using nlohmann::json;

inline json to_json(const ChordReport& r) {
  return {{"p", r.p},
          {"u", r.u},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"satisfied", r.satisfied},
          {"margin", r.relative_margin},
          {"quad_error", r.quadrature_error_estimate}};
}

inline json to_json(const EnergyResult& r) {
  return {{"delta", r.delta},
          {"u_min", r.cutoff_used},
          {"quad_error", r.quadrature_error},
          {"cutoff_bound", r.cutoff_remainder_bound}};
}

inline json to_json(const GroundState& g) {
  return {{"epsilon1", g.epsilon1},
          {"kappa_star", g.kappa_star},
          {"n", g.n},
          {"residual", g.residual}};
}

inline json to_json(const TangentAngleCurve& tc, double p, double u, double value) {
  return {{"p", p},
          {"u", u},
          {"K", tc.K},
          {"a", tc.a},
          {"b", tc.b},
          {"value", value},
          {"closure_defect", tc.closure_defect}};
}

inline json to_json(const ArcLengthCurve& c) { return c.descriptor(); }

namespace detail {

template <class T>
T json_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(where + ": missing field \"" + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DomainError(where + ": field \"" + key + "\" has the wrong type");
  }
}

template <class T>
T json_field_or(const json& j, const char* key, T fallback, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return json_field<T>(j, key, where);
}

inline std::vector<FourierMode> modes_from_json(const json& arr) {
  if (!arr.is_array()) throw DomainError("fourier curve: \"coefficients\" must be an array");
  std::vector<FourierMode> out;
  for (const json& m : arr) {
    FourierMode fm;
    fm.n = json_field<int>(m, "n", "fourier coefficient");
    fm.re = json_field<std::vector<double>>(m, "re", "fourier coefficient");
    fm.im = json_field<std::vector<double>>(m, "im", "fourier coefficient");
    out.push_back(std::move(fm));
  }
  return out;
}

}  // namespace detail

inline TangentAngleCurve tangent_curve_from_json(const json& j) {
  const std::string where = "tangent-angle curve";
  const json& src = j.contains("params") ? j.at("params") : j;
  auto a = detail::json_field<std::vector<double>>(src, "a", where);
  auto b = detail::json_field<std::vector<double>>(src, "b", where);
  if (a.size() != b.size()) throw DomainError(where + ": a and b differ in length");
  return make_tangent_curve(std::move(a), std::move(b));
}

/// Inverse of to_json(ArcLengthCurve) for every curve kind.
inline ArcLengthCurve curve_from_json(const json& j, RealizeOptions realize_opt = {}) {
  if (!j.is_object()) throw DomainError("curve spec: expected a JSON object");
  const std::string kind = detail::json_field<std::string>(j, "kind", "curve spec");
  const json params = j.contains("params") ? j.at("params") : json::object();
  const double two_pi = 2.0 * std::numbers::pi;
  const double length = detail::json_field_or<double>(j, "length", two_pi, "curve spec");
  if (kind == "circle") {
    return make_circle(length, detail::json_field_or<int>(j, "dimension", 2, "circle"));
  }
  if (kind == "stadium") {
    return make_stadium(detail::json_field<double>(params, "a", "stadium params"), length);
  }
  if (kind == "polygon") {
    return make_regular_polygon(detail::json_field<int>(params, "sides", "polygon params"),
                                length);
  }
  if (kind == "doubled_segment") return make_doubled_segment(length);
  if (kind == "fourier") {
    const auto fc = make_fourier_curve(detail::modes_from_json(
        j.contains("coefficients") ? j.at("coefficients") : json()));
    const ArcLengthCurve c = realize(fc, realize_opt);
    return j.contains("length") ? c.with_length(length) : c;
  }
  if (kind == "tangent_angle") {
    const TangentAngleCurve tc = tangent_curve_from_json(j);
    return realize_tangent_curve(tc).with_length(length);
  }
  throw DomainError("curve spec: unknown kind \"" + kind + "\"");
}

/// Curve from a command-line spec: a JSON object, or name[:parameter] with
/// length 2 pi. Ellipses are realized from their Fourier form and rescaled
/// to length 2 pi.
inline ArcLengthCurve parse_curve_spec(const std::string& spec) {
  const auto first = spec.find_first_not_of(" \t\n");
  if (first != std::string::npos && spec[first] == '{') {
    json j;
    try {
      j = json::parse(spec);
    } catch (const json::exception& e) {
      throw DomainError(std::string("curve spec: invalid JSON: ") + e.what());
    }
    return curve_from_json(j);
  }
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto number = [&]() {
    if (arg.empty()) throw DomainError("curve spec: \"" + name + "\" needs a parameter");
    try {
      std::size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw DomainError("curve spec: bad parameter \"" + arg + "\"");
    }
  };
  const double two_pi = 2.0 * std::numbers::pi;
  if (name == "circle" && arg.empty()) return make_circle(two_pi);
  if (name == "stadium") return make_stadium(number());
  if (name == "polygon") {
    const double sides = number();
    if (sides != std::floor(sides)) throw DomainError("curve spec: polygon side count must be an integer");
    return make_regular_polygon(static_cast<int>(sides), two_pi);
  }
  if (name == "doubled_segment" && arg.empty()) return make_doubled_segment(two_pi);
  if (name == "ellipse") {
    return realize(ellipse_fourier_curve(number()), 256, 1e-12).with_length(two_pi);
  }
  throw DomainError("curve spec: unknown curve \"" + spec + "\"");
}

}  // namespace chordmeans
