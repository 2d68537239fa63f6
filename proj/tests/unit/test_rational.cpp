#include "doctest.h"

#include "hkd/expr.hpp"
#include "hkd/rational.hpp"

using namespace hkd;

TEST_CASE("rationals parse and print exactly") {
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational(" -7 ") == Rational(-7));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(Rational(3, 2)) == "3/2");
    CHECK(to_string(Rational(-4, 2)) == "-2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("2/"), std::invalid_argument);
}

TEST_CASE("decimal rendering is display only and rounded") {
    CHECK(to_decimal(Rational(1, 3)) == "0.333333333333");
    CHECK(to_decimal(Rational(-3, 2)) == "-1.5");
    CHECK(to_decimal(Rational(0)) == "0");
}

TEST_CASE("floor and ceil of negative fractions") {
    CHECK(floor(Rational(-1, 2)) == -1);
    CHECK(ceil(Rational(-1, 2)) == 0);
    CHECK(floor(Rational(7, 2)) == 3);
    CHECK(ceil(Rational(7, 2)) == 4);
    CHECK(floor(Rational(4)) == 4);
    CHECK_THROWS_AS(to_int64(Integer(1) << 70), std::overflow_error);
}

TEST_CASE("gcd of lattice vectors") {
    CHECK(gcd_of({4, -6}) == 2);
    CHECK(gcd_of({0, 5}) == 5);
    CHECK(gcd_of({1, -1}) == 1);
}

TEST_CASE("expressions over parameters") {
    std::map<std::string, Rational> p{{"a", Rational(2)}, {"c", Rational(1)}, {"d", Rational(3)}};
    Polynomial e = parse_expr("(c+a*d/2)*(d+1)*(lambda-1)", p);
    CHECK(e(Rational(1)) == 0);
    CHECK(e(Rational(2)) == 16);
    CHECK(parse_expr("lambda^2 - 6*(lambda-1)^2", {})(Rational(3, 2)) == Rational(3, 4));
    CHECK(parse_constant("1+(a+1)/(a*d+c)", p) == Rational(10, 7));
    CHECK(parse_constant("-l", {{"l", Rational(3)}}) == -3);
    CHECK_THROWS_AS(parse_constant("1/(a-2)", p), ExprError);
    CHECK_THROWS_AS(parse_expr("1/lambda", p), ExprError);
    CHECK_THROWS_AS(parse_expr("b+1", p), ExprError);
    CHECK_THROWS_AS(parse_expr("(a+1", p), ExprError);
    CHECK_THROWS_AS(parse_constant("lambda", p), ExprError);
}
