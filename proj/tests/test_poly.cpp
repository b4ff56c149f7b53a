#include <random>

#include "doctest.h"
#include "germ/errors.hpp"
#include "germ/parse.hpp"
#include "random_poly.hpp"

using germ::Rational;
using germ::poly::MPoly;
using germ::poly::parse_poly;
using germ::poly::Var;

TEST_CASE("rational arithmetic stays reduced") {
    Rational a(germ::Integer(6), germ::Integer(-4));
    CHECK(a.numerator() == -3);
    CHECK(a.denominator() == 2);
    CHECK((a + Rational(3, 2) * 0).str() == "-3/2");
    CHECK(Rational::parse(" 4/6 ") == Rational(2, 3));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("x"), std::invalid_argument);
    CHECK(Rational(7, 3).floor() == 2);
    CHECK(Rational(7, 3).ceil() == 3);
    Rational r;
    CHECK(germ::exact_root(Rational(-8, 27), 3, r));
    CHECK(r == Rational(-2, 3));
    CHECK_FALSE(germ::exact_root(Rational(2), 2, r));
}

TEST_CASE("extended rationals order infinities around finite values") {
    using germ::ExtendedRational;
    CHECK(ExtendedRational::negative_infinity() < ExtendedRational(Rational(-100)));
    CHECK(ExtendedRational(Rational(5)) < ExtendedRational::positive_infinity());
    CHECK(ExtendedRational::positive_infinity().str() == "inf");
    CHECK(ExtendedRational::negative_infinity().str() == "-inf");
}

TEST_CASE("parse the worked-example germ") {
    const MPoly f = parse_poly("z3^2 - (z1^3 - z2^2)^2*(z1^4 - z2^3)");
    // The expansion has seven monomials.
    CHECK(f.size() == 7);
    CHECK(f.coefficient({10, 0, 0}) == Rational(-1));
    CHECK(f.coefficient({7, 2, 0}) == Rational(2));
    CHECK(f.coefficient({6, 3, 0}) == Rational(1));
    CHECK(f.coefficient({4, 4, 0}) == Rational(-1));
    CHECK(f.coefficient({3, 5, 0}) == Rational(-2));
    CHECK(f.coefficient({0, 7, 0}) == Rational(1));
    CHECK(f.coefficient({0, 0, 2}) == Rational(1));
}

TEST_CASE("parse small expressions") {
    CHECK(parse_poly("0").is_zero());
    CHECK(parse_poly("(z1+z2)^2") == parse_poly("z1^2 + 2*z1*z2 + z2^2"));
    CHECK(parse_poly("z1/2 - 1/3").str() == "1/2*z1 - 1/3");
    CHECK(parse_poly("-z1^2") == -parse_poly("z1^2"));
    CHECK(parse_poly("(z1 - z2)^0") == MPoly(1));
    CHECK(parse_poly("x*y", {"x", "y", "w"}).str() == "x*y");
}

TEST_CASE("parse errors carry positions") {
    try {
        parse_poly("z1 + * z2");
        FAIL("expected a parse error");
    } catch (const germ::ParseError& e) {
        CHECK(e.position() == 5);
    }
    CHECK_THROWS_AS(parse_poly("z1 + q"), germ::UnknownIdentifierError);
    CHECK_THROWS_AS(parse_poly("z1 z2"), germ::ParseError);
    CHECK_THROWS_AS(parse_poly("z1^z2"), germ::ParseError);
    CHECK_THROWS_AS(parse_poly("z1/z2"), germ::ParseError);
    CHECK_THROWS_AS(parse_poly("z1/0"), germ::ParseError);
    CHECK_THROWS_AS(parse_poly("(z1"), germ::ParseError);
    CHECK_THROWS_AS(parse_poly(""), germ::ParseError);
    try {
        parse_poly("z1 + foo");
        FAIL("expected unknown identifier");
    } catch (const germ::UnknownIdentifierError& e) {
        CHECK(e.name() == "foo");
        CHECK(e.position() == 5);
    }
}

TEST_CASE("partial derivatives") {
    CHECK(parse_poly("z3^2 - z1^4 + z2^3").derivative(Var::Z3) == parse_poly("2*z3"));
    CHECK(parse_poly("7/3").derivative(Var::Z1).is_zero());
    CHECK(germ::poly::partial_derivative(parse_poly("z1^4 - z2^3"), Var::Z2) == parse_poly("-3*z2^2"));
    CHECK_THROWS_AS(germ::poly::var_from_number(4), std::invalid_argument);
    CHECK(germ::poly::var_from_number(2) == Var::Z2);
}

TEST_CASE("rendering is grlex with explicit operators") {
    const MPoly p = parse_poly("z2^3 - z1^4 + 3*z1*z2*z3 - 1");
    CHECK(p.str() == "-z1^4 + 3*z1*z2*z3 + z2^3 - 1");
    CHECK(MPoly().str() == "0");
}

TEST_CASE("parse round-trips random renderings") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        MPoly p = germ::testing::random_poly(rng, 5, 6);
        p *= Rational(1 + i % 3, 1 + i % 4);
        CHECK(parse_poly(p.str()) == p);
    }
}

TEST_CASE("substitution and evaluation agree") {
    const MPoly p = parse_poly("z1^2*z2 - 3*z3 + 1");
    const MPoly q = p.substitute(Var::Z3, parse_poly("z1 + z2"));
    CHECK(q == parse_poly("z1^2*z2 - 3*z1 - 3*z2 + 1"));
    CHECK(p.evaluate({Rational(2), Rational(3), Rational(1, 3)}) == Rational(12));
    CHECK(p.evaluate_at(Var::Z1, Rational(0)) == parse_poly("-3*z3 + 1"));
}

TEST_CASE("exact division") {
    const MPoly a = parse_poly("(z1 - z2)*(z1^2 + z3)");
    CHECK(germ::poly::exact_divide(a, parse_poly("z1 - z2")) == parse_poly("z1^2 + z3"));
    CHECK_FALSE(germ::poly::exact_divide(a, parse_poly("z1 + z2")).has_value());
}
