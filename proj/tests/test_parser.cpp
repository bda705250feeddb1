#include <doctest.h>

#include <string>
#include <vector>

#include "popp/poly_parser.hpp"

using namespace popp;

TEST_CASE("grammar basics") {
  CHECK(parse_poly("y^2", 3) == Poly::monomial(3, {0, 2, 0}, 1));
  CHECK(parse_poly("1/2*x", 3) == Poly::monomial(3, {1, 0, 0}, Coefficient(mpq_class(1, 2))));
  CHECK(parse_poly("x/2", 3) == parse_poly("1/2*x", 3));
  CHECK(parse_poly("-(x - 2*y)^2", 3) == parse_poly("-x^2 + 4*x*y - 4*y^2", 3));
  CHECK(parse_poly("0.25*z", 3) == parse_poly("z/4", 3));
  CHECK(parse_poly("1.5", 3) == Poly::constant(3, Coefficient(mpq_class(3, 2))));
  CHECK(parse_poly("x1 + x2*x3", 3) == parse_poly("x + y*z", 3));
  CHECK(parse_poly("  x  *  y ", 3) == parse_poly("x*y", 3));
  CHECK(parse_poly("sqrt(2)*sqrt(2)", 3) == Poly::constant(3, 2));
  CHECK(parse_poly("x/(1 + 1)", 3) == parse_poly("x/2", 3));
  CHECK(parse_poly("x/sqrt(2)", 3) == parse_poly("sqrt(2)/2*x", 3));
}

TEST_CASE("custom variable names") {
  std::vector<std::string> names{"u", "v", "t"};
  CHECK(parse_poly("u*t - v", 3, names) == parse_poly("x*z - y", 3));
  CHECK(parse_poly("x1", 3, names) == parse_poly("x", 3));
  CHECK_THROWS_AS(parse_poly("x", 3, names), PolyParseError);
}

TEST_CASE("default names depend on the dimension") {
  CHECK(parse_poly("w", 4) == Poly::variable(4, 3));
  CHECK_THROWS_AS(parse_poly("w", 3), PolyParseError);
  CHECK(parse_poly("x6", 6) == Poly::variable(6, 5));
  CHECK_THROWS_AS(parse_poly("x7", 6), PolyParseError);
}

TEST_CASE("malformed input reports the column") {
  struct Case {
    const char* text;
    std::size_t column;
  };
  for (Case c : {Case{"x +", 4}, Case{"x ^ y", 5}, Case{"(x", 3}, Case{"x $ y", 3}, Case{"1/x", 3},
                 Case{"x/0", 3}, Case{"x^-1", 3}, Case{"2*q", 3}}) {
    CAPTURE(c.text);
    try {
      parse_poly(c.text, 3);
      FAIL("no error");
    } catch (const PolyParseError& e) {
      CHECK(e.column() == c.column);
    }
  }
  CHECK_THROWS_AS(parse_poly("", 3), PolyParseError);
  CHECK_THROWS_AS(parse_poly("x^1001", 3), PolyParseError);
  CHECK_THROWS_AS(parse_poly("sqrt(3)", 3), PolyParseError);
  CHECK_THROWS_AS(parse_poly("x^123456789012", 3), PolyParseError);
  CHECK_THROWS_AS(parse_poly("x123456789012345678901234", 3), PolyParseError);
}
