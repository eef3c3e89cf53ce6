#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "chordmeans/serialize.hpp"

using namespace chordmeans;
namespace {
constexpr double kPi = std::numbers::pi;

void expect_same_curve(const ArcLengthCurve& a, const ArcLengthCurve& b) {
  ASSERT_NEAR(a.length(), b.length(), 1e-12);
  for (int i = 0; i < 37; ++i) {
    const double s = a.length() * i / 37.0;
    EXPECT_LT((a.eval(s) - b.eval(s)).norm(), 1e-10) << s;
  }
}
}  // namespace

TEST(CurveJson, RoundTripsEveryKind) {
  std::vector<ArcLengthCurve> curves = {
      make_circle(3.0), make_stadium(0.4), make_regular_polygon(6, 2.0 * kPi),
      make_doubled_segment(2.0 * kPi), realize(ellipse_fourier_curve(1.7)),
      realize_tangent_curve(make_tangent_curve({0.0, 0.2}, {0.0, -0.1}))};
  for (const auto& c : curves) {
    const json j = to_json(c);
    expect_same_curve(c, curve_from_json(json::parse(j.dump())));
  }
}

TEST(CurveJson, FieldsAreChecked) {
  EXPECT_THROW(curve_from_json(json::parse(R"({"kind":"blob"})")), DomainError);
  EXPECT_THROW(curve_from_json(json::parse(R"({"kind":"stadium"})")), DomainError);
  EXPECT_THROW(curve_from_json(json::parse(R"({"kind":"stadium","params":{"a":"x"}})")),
               DomainError);
  EXPECT_THROW(curve_from_json(json::parse("[1,2]")), DomainError);
}

TEST(CurveSpec, ShortForms) {
  EXPECT_EQ(parse_curve_spec("circle").descriptor()["kind"], "circle");
  EXPECT_EQ(parse_curve_spec("stadium:0.5").descriptor()["params"]["a"], 0.5);
  EXPECT_EQ(parse_curve_spec("polygon:6").descriptor()["params"]["sides"], 6);
  EXPECT_NEAR(parse_curve_spec("ellipse:2").length(), 2.0 * kPi, 1e-12);
  EXPECT_NEAR(parse_curve_spec(R"({"kind":"circle","length":5})").length(), 5.0, 0.0);
  for (const char* bad : {"square", "stadium", "stadium:x", "polygon:2.5", "circle:3", "{oops"}) {
    EXPECT_THROW(parse_curve_spec(bad), DomainError) << bad;
  }
}

TEST(ResultJson, CarriesExpectedKeys) {
  const auto rep = check_inequality(make_circle(2.0 * kPi), 2.0, 1.0);
  const json j = to_json(rep);
  for (const char* key : {"p", "u", "lhs", "rhs", "satisfied", "margin", "quad_error"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["satisfied"], true);
  GroundState g;
  g.epsilon1 = -0.25;
  g.kappa_star = 0.5;
  g.n = 64;
  EXPECT_EQ(to_json(g)["epsilon1"], -0.25);
}
