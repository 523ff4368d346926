#include "pathtrans/path_spec.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace pathtrans;

TEST(ParseNumber, AcceptsPiExpressions) {
  EXPECT_DOUBLE_EQ(parse_number("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(parse_number("-pi/3"), -std::numbers::pi / 3);
  EXPECT_DOUBLE_EQ(parse_number("2*pi"), 2 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(parse_number("3pi/4"), 3 * std::numbers::pi / 4);
  EXPECT_THROW(parse_number("abc"), Error);
  EXPECT_THROW(parse_number(""), Error);
}

TEST(ParseVector, CommaSeparated) {
  const Vec v = parse_vector("pi/3,0");
  ASSERT_EQ(v.size(), 2);
  EXPECT_DOUBLE_EQ(v(0), std::numbers::pi / 3);
  EXPECT_EQ(v(1), 0.0);
}

TEST(PathSpec, KeyValueForm) {
  const PathSpec spec = parse_path_spec("segment from=0,0 to=1,2");
  EXPECT_EQ(spec.family, "segment");
  EXPECT_EQ(spec.params.at("to"), "1,2");
  const Path p = build_path(spec);
  EXPECT_DOUBLE_EQ(p.position(1.0)(1), 2.0);
}

TEST(PathSpec, BracesAndSemicolons) {
  const Path p = parse_path("segment {from=0,0; to=1,1}");
  EXPECT_DOUBLE_EQ(p.position(0.5)(0), 0.5);
}

TEST(PathSpec, PositionalShorthand) {
  const Path p = parse_path("latitude:pi/3");
  EXPECT_DOUBLE_EQ(p.position(0.0)(0), std::numbers::pi / 3);
  EXPECT_NEAR(p.position(1.0)(1), 2 * std::numbers::pi, 1e-15);
  EXPECT_EQ(primary_parameter("latitude"), "colatitude");
}

TEST(PathSpec, LatitudeOnCustomDomain) {
  const Path p = parse_path("latitude colatitude=1 turns=2 domain=1,3");
  EXPECT_NEAR(p.position(1.0)(1), 0.0, 1e-15);
  EXPECT_NEAR(p.position(3.0)(1), 4 * std::numbers::pi, 1e-14);
}

TEST(PathSpec, GreatCircleAndConstant) {
  const Path g = parse_path("great_circle point=pi/2,0 direction=0,1 length=pi/2");
  EXPECT_NEAR(g.position(std::numbers::pi / 2)(1), std::numbers::pi / 2, 1e-12);
  const Path c = parse_path("constant point=1,2,3");
  EXPECT_EQ(c.dim(), 3);
}

TEST(PathSpec, Errors) {
  for (const char* bad : {"", "spiral r=1", "segment from=0,0", "segment from=0,0 to=1,1 colour=red",
                          "latitude:1:2:3:4:5:6", "segment from"}) {
    try {
      parse_path(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ConfigParse) << bad;
    }
  }
}
