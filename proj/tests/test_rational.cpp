#include <doctest.h>

#include "quala/errors.hpp"
#include "quala/rational.hpp"

using namespace quala;

TEST_CASE("rationals are kept in lowest terms with positive denominator") {
    Rational r(BigInt(4), BigInt(-6));
    CHECK(r.numerator() == -2);
    CHECK(r.denominator() == 3);
    CHECK(Rational(BigInt(0), BigInt(7)).denominator() == 1);
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), SyntaxError);
}

TEST_CASE("arithmetic is exact") {
    Rational a(BigInt(1), BigInt(3)), b(BigInt(1), BigInt(6));
    CHECK(a + b == Rational(BigInt(1), BigInt(2)));
    CHECK(a - b == b);
    CHECK(a * b == Rational(BigInt(1), BigInt(18)));
    CHECK(a / b == Rational(2));
    CHECK(-a == Rational(BigInt(-1), BigInt(3)));
    CHECK(Rational(-5).abs() == Rational(5));
    CHECK_THROWS_AS(a / Rational(0), SyntaxError);
}

TEST_CASE("comparison is a total order") {
    CHECK(Rational(BigInt(1), BigInt(3)) < Rational(BigInt(1), BigInt(2)));
    CHECK(Rational(BigInt(-1), BigInt(2)) < Rational(0));
    CHECK(Rational(BigInt(2), BigInt(4)) == Rational(BigInt(1), BigInt(2)));
}

TEST_CASE("powers stay exact for large exponents") {
    Rational half(BigInt(1), BigInt(2));
    Rational p = half.pow(100);
    CHECK(p.numerator() == 1);
    CHECK(p.denominator() == boost::multiprecision::pow(BigInt(2), 100));
    CHECK(Rational(3).pow(0) == Rational(1));
}

TEST_CASE("parse and print round-trip") {
    CHECK(Rational::parse("3/7").str() == "3/7");
    CHECK(Rational::parse("-6/4").str() == "-3/2");
    CHECK(Rational::parse("42").str() == "42");
    CHECK(Rational::parse(" 1/2 ").str_pq() == "1/2");
    CHECK(Rational::parse("5").str_pq() == "5/1");
    CHECK_THROWS_AS(Rational::parse(""), SyntaxError);
    CHECK_THROWS_AS(Rational::parse("1/0"), SyntaxError);
    CHECK_THROWS_AS(Rational::parse("x"), SyntaxError);
    CHECK_THROWS_AS(Rational::parse("1/"), SyntaxError);
}

TEST_CASE("decimal rendering is display only and truncates") {
    CHECK(Rational::parse("1/3").decimal(4) == "0.3333");
    CHECK(Rational::parse("-1/2").decimal(2) == "-0.50");
    CHECK(Rational::parse("16/1").decimal(0) == "16");
    CHECK(Rational::parse("16/1").decimal(3) == "16.000");
}
