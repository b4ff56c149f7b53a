#include <random>

#include "doctest.h"
#include "germ/algebra.hpp"
#include "germ/parse.hpp"
#include "random_poly.hpp"

using germ::Rational;
using germ::poly::MPoly;
using germ::poly::parse_poly;
using germ::poly::Var;

namespace {

// Same polynomial up to a nonzero rational factor.
bool associates(const MPoly& a, const MPoly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    return a.monic() == b.monic();
}

bool divides(const MPoly& d, const MPoly& p) {
    return germ::poly::exact_divide(p, d).has_value();
}

MPoly random_in_z3(std::mt19937_64& rng, int max_deg) {
    for (;;) {
        MPoly p = germ::testing::random_poly(rng, max_deg, 4);
        if (p.depends_on(Var::Z3)) return p;
    }
}

}  // namespace

TEST_CASE("resultant of a quadratic with its derivative") {
    const MPoly c = parse_poly("z1^2*z2 - 3*z2 + z1");
    const MPoly a = parse_poly("z3^2") - c;
    CHECK(germ::poly::resultant(a, a.derivative(Var::Z3), Var::Z3) == Rational(-4) * c);
    const MPoly e = parse_poly("z3^2 - (z1^4 - z2^3)");
    CHECK(germ::poly::resultant(e, parse_poly("2*z3"), Var::Z3) == parse_poly("-4*(z1^4 - z2^3)"));
}

TEST_CASE("resultant degenerate cases") {
    const MPoly a = parse_poly("z3^3 + z1");
    CHECK(germ::poly::resultant(a, MPoly(1), Var::Z3) == MPoly(1));
    CHECK(germ::poly::resultant(a, MPoly(2), Var::Z3) == MPoly(8));
    CHECK(germ::poly::resultant(a, MPoly(), Var::Z3).is_zero());
    CHECK_THROWS_AS(germ::poly::resultant(MPoly(), MPoly(), Var::Z3), std::invalid_argument);
}

TEST_CASE("resultant of linear factors is the difference of roots") {
    // Res(z3 - a, z3 - b) = a - b up to the Sylvester sign convention (b - a here).
    const MPoly r = germ::poly::resultant(parse_poly("z3 - z1"), parse_poly("z3 - z2^2"), Var::Z3);
    CHECK(r == parse_poly("z1 - z2^2"));
}

TEST_CASE("resultant is multiplicative") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 100; ++i) {
        const MPoly a = random_in_z3(rng, 2);
        const MPoly b = random_in_z3(rng, 2);
        const MPoly c = random_in_z3(rng, 2);
        const MPoly lhs = germ::poly::resultant(a * b, c, Var::Z3);
        const MPoly rhs = germ::poly::resultant(a, c, Var::Z3) * germ::poly::resultant(b, c, Var::Z3);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("resultant vanishes exactly on a common factor") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 100; ++i) {
        const MPoly common = random_in_z3(rng, 2);
        const MPoly a = common * random_in_z3(rng, 2);
        const MPoly b = common * germ::testing::random_nonzero_poly(rng, 2, 3);
        CHECK(germ::poly::resultant(a, b, Var::Z3).is_zero());
        const MPoly x = random_in_z3(rng, 3);
        const MPoly y = random_in_z3(rng, 3);
        const bool shares = germ::poly::gcd(x, y).depends_on(Var::Z3);
        CHECK(germ::poly::resultant(x, y, Var::Z3).is_zero() == shares);
    }
}

TEST_CASE("bivariate gcd examples") {
    const MPoly c = parse_poly("z1^3 - z2^2");
    CHECK(associates(germ::poly::bivariate_gcd(c.pow(2), c * parse_poly("z2 - 1")), c));
    const MPoly p = parse_poly("3*z1^2 - 6*z2");
    CHECK(germ::poly::bivariate_gcd(p, MPoly()) == parse_poly("z1^2 - 2*z2"));
    CHECK(germ::poly::bivariate_gcd(parse_poly("z1"), parse_poly("z2")) == MPoly(1));
    CHECK(germ::poly::bivariate_gcd(MPoly(), MPoly()).is_zero());
    CHECK_THROWS_AS(germ::poly::bivariate_gcd(parse_poly("z3"), parse_poly("z1")), std::invalid_argument);
}

TEST_CASE("gcd divides both arguments and recovers constructed factors") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const MPoly g = germ::testing::random_nonzero_poly(rng, 2, 3);
        const MPoly a = g * germ::testing::random_nonzero_poly(rng, 2, 3);
        const MPoly b = g * germ::testing::random_nonzero_poly(rng, 2, 3);
        const MPoly d = germ::poly::gcd(a, b);
        CHECK(divides(d, a));
        CHECK(divides(d, b));
        CHECK(divides(g, d));
        CHECK(d.leading_coefficient() == Rational(1));
    }
}

TEST_CASE("gcd of coprime constructed pairs is constant") {
    // Distinct linear forms are pairwise coprime.
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> c(-5, 5);
    for (int i = 0; i < 100; ++i) {
        const int a1 = c(rng), a2 = c(rng);
        int b1 = c(rng);
        if (b1 == a1) b1 = a1 + 1;
        const MPoly u = parse_poly("z2") - MPoly(a1) * parse_poly("z1") - MPoly(a2);
        const MPoly v = parse_poly("z2") - MPoly(b1) * parse_poly("z1") - MPoly(c(rng));
        const MPoly w = parse_poly("z2^2 - z1^3") + MPoly(1 + (i % 3));
        CHECK(germ::poly::gcd(u * u, v * w).is_constant());
    }
}

TEST_CASE("squarefree decomposition of the worked-example data") {
    const MPoly g = parse_poly("(z1^3 - z2^2)^2*(z1^4 - z2^3)");
    const auto dec = germ::poly::squarefree_decompose(g, Var::Z2);
    REQUIRE(dec.factors.size() == 2);
    CHECK(dec.factors[0].multiplicity == 1);
    CHECK(associates(dec.factors[0].factor, parse_poly("z1^4 - z2^3")));
    CHECK(dec.factors[1].multiplicity == 2);
    CHECK(associates(dec.factors[1].factor, parse_poly("z1^3 - z2^2")));
    CHECK(dec.expand() == g);
}

TEST_CASE("squarefree decomposition trivial cases") {
    const MPoly p = parse_poly("z1^4 - z2^3");
    const auto dec = germ::poly::squarefree_decompose(p, Var::Z2);
    REQUIRE(dec.factors.size() == 1);
    CHECK(associates(dec.factors[0].factor, p));
    CHECK(dec.factors[0].multiplicity == 1);

    const auto cube = germ::poly::squarefree_decompose(parse_poly("(z2 - z1)^3"), Var::Z2);
    REQUIRE(cube.factors.size() == 1);
    CHECK(cube.factors[0].multiplicity == 3);
    CHECK(associates(cube.factors[0].factor, parse_poly("z2 - z1")));
    CHECK(cube.unit == Rational(-1));
    CHECK(cube.expand() == parse_poly("(z2 - z1)^3"));

    CHECK_THROWS_AS(germ::poly::squarefree_decompose(MPoly(), Var::Z2), std::invalid_argument);
    const auto constant = germ::poly::squarefree_decompose(MPoly(6), Var::Z2);
    CHECK(constant.factors.empty());
    CHECK(constant.unit == Rational(6));
}

TEST_CASE("squarefree decomposition handles content in the other variable") {
    const MPoly p = parse_poly("z1^3*(z1 + 1)^2*(z2 - z1)^2*(z2 + z1^2)");
    const auto dec = germ::poly::squarefree_decompose(p, Var::Z2);
    CHECK(dec.expand() == p);
    unsigned total = 0;
    for (const auto& f : dec.factors) total += f.multiplicity * static_cast<unsigned>(f.factor.total_degree());
    CHECK(total == static_cast<unsigned>(p.total_degree()));
}

TEST_CASE("squarefree reconstruction on random products") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        const MPoly a = germ::testing::random_nonzero_poly(rng, 2, 3, false);
        const MPoly b = germ::testing::random_nonzero_poly(rng, 2, 3, false);
        const MPoly p = a * b.pow(2) * Rational(i % 5 + 1, 3);
        const auto dec = germ::poly::squarefree_decompose(p, Var::Z2);
        CHECK(dec.expand() == p);
        for (std::size_t j = 0; j < dec.factors.size(); ++j) {
            const MPoly& f = dec.factors[j].factor;
            CHECK(germ::poly::gcd(f, f.derivative(Var::Z2)).is_constant() == f.depends_on(Var::Z2));
            for (std::size_t k = j + 1; k < dec.factors.size(); ++k)
                CHECK(germ::poly::gcd(f, dec.factors[k].factor).is_constant());
        }
    }
}

TEST_CASE("specialized squarefree test agrees with the full gcd") {
    std::mt19937_64 rng(32);
    int repeated = 0;
    for (int i = 0; i < 100; ++i) {
        const MPoly a = germ::testing::random_nonzero_poly(rng, 3, 4, false);
        const MPoly b = germ::testing::random_nonzero_poly(rng, 2, 3, false);
        const MPoly p = i % 2 == 0 ? a * b : a * b.pow(2);
        const bool expected = !germ::poly::gcd(p, p.derivative(Var::Z2)).depends_on(Var::Z2);
        CHECK(germ::poly::squarefree_in(p, Var::Z2) == expected);
        if (!expected) ++repeated;
    }
    CHECK(repeated > 20);
    CHECK_FALSE(germ::poly::squarefree_in(parse_poly("(z2^2 - z1^3)^2*(z2 - z1)"), Var::Z2));
    CHECK(germ::poly::squarefree_in(parse_poly("(z2^2 - z1^3)*(z2 - z1)*(z1 - 1)^2"), Var::Z2));
}
