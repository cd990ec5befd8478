#include <catch2/catch_amalgamated.hpp>

#include "lnt/parse.hpp"

using namespace lnt;

namespace {
IntRing Z;
RatRing Q;

std::string roundtrip(const std::string& in) { return format_poly(parse_poly(Z, in)); }
}  // namespace

TEST_CASE("commutator notation expands on parse", "[parse]") {
  CHECK(roundtrip("[x1,x2]") == "x1*x2 - x2*x1");
  CHECK(roundtrip("[x1,x2,x3]") == "x1*x2*x3 - x2*x1*x3 - x3*x1*x2 + x3*x2*x1");
  CHECK(roundtrip("[x1, x2] - x1*x2") == "-x2*x1");
}

TEST_CASE("arithmetic normalizes to the canonical form", "[parse]") {
  CHECK(roundtrip("x1*x2 - x2*x1") == "x1*x2 - x2*x1");
  CHECK(roundtrip("x1 + x1") == "2*x1");
  CHECK(roundtrip("x1 - x1") == "0");
  CHECK(roundtrip("2*x1*(x2 + 3)") == "6*x1 + 2*x1*x2");
  CHECK(roundtrip("-x1") == "-x1");
  CHECK(roundtrip("- - x1") == "x1");
  CHECK(roundtrip("0") == "0");
  CHECK(roundtrip("(x1 + x2)*(x1 - x2)") == "x1*x1 - x1*x2 + x2*x1 - x2*x2");
  CHECK(roundtrip("7") == "7");
}

TEST_CASE("canonical output reparses to the same polynomial", "[parse]") {
  for (const char* src : {"[x1,x2,x3,x4]", "3*[x1,x2]*x3 - x2", "[[x1,x2],[x3,x4]]",
                          "[x1*x2, x3]", "x1*x1*x1 - 2*x1 + 5"}) {
    auto p = parse_poly(Z, src);
    CHECK(parse_poly(Z, format_poly(p)) == p);
  }
}

TEST_CASE("nested brackets mean iterated commutators", "[parse]") {
  auto lhs = parse_poly(Z, "[[x1,x2],x3]");
  auto rhs = parse_poly(Z, "[x1,x2,x3]");
  CHECK(lhs == rhs);
  auto mixed = parse_poly(Z, "[x1,[x2,x3]]");
  CHECK(mixed == parse_poly(Z, "[x1,x2,x3] - [x1,x3,x2]"));
}

TEST_CASE("juxtaposed factors are rejected", "[parse]") {
  CHECK_THROWS_AS(parse_poly(Z, "x1 x2"), ParseError);
  CHECK_THROWS_WITH(parse_poly(Z, "x1 x2"), Catch::Matchers::ContainsSubstring("missing '*'"));
  CHECK_THROWS_WITH(parse_poly(Z, "2x1"), Catch::Matchers::ContainsSubstring("missing '*'"));
  CHECK_THROWS_WITH(parse_poly(Z, "x1(x2)"), Catch::Matchers::ContainsSubstring("missing '*'"));
  CHECK_THROWS_WITH(parse_poly(Z, "(x1)(x2)"), Catch::Matchers::ContainsSubstring("missing '*'"));
}

TEST_CASE("malformed input reports a position", "[parse]") {
  try {
    parse_poly(Z, "x1 + ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos == 5);
  }
  CHECK_THROWS_AS(parse_poly(Z, "[x1]"), ParseError);
  CHECK_THROWS_AS(parse_poly(Z, "[x1,x2"), ParseError);
  CHECK_THROWS_AS(parse_poly(Z, "(x1"), ParseError);
  CHECK_THROWS_AS(parse_poly(Z, "x"), ParseError);
  CHECK_THROWS_AS(parse_poly(Z, "x0"), ParseError);
  CHECK_THROWS_AS(parse_poly(Z, "y1"), ParseError);
  CHECK_THROWS_AS(parse_poly(Z, ""), ParseError);
  CHECK_THROWS_AS(parse_poly(Z, "x1 + * x2"), ParseError);
}

TEST_CASE("fraction literals only parse over the rationals", "[parse]") {
  auto p = parse_poly(Q, "1/2*x1 + 1/3*x1");
  CHECK(format_poly(p) == "5/6*x1");
  CHECK_THROWS_WITH(parse_poly(Z, "1/2*x1"),
                    Catch::Matchers::ContainsSubstring("requires ring Q"));
  ModRing F5(5);
  CHECK_THROWS_WITH(parse_poly(F5, "1/2*x1"),
                    Catch::Matchers::ContainsSubstring("requires ring Q"));
  CHECK_THROWS_WITH(parse_poly(Q, "1/0"), Catch::Matchers::ContainsSubstring("division by zero"));
}

TEST_CASE("modular parsing reduces coefficients", "[parse]") {
  ModRing F5(5);
  auto p = parse_poly(F5, "7*x1 - x2*6");
  CHECK(format_poly(p) == "2*x1 + 4*x2");
}
