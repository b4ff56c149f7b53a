#include <algorithm>
#include <random>

#include "doctest.h"
#include "germ/algebra.hpp"
#include "germ/errors.hpp"
#include "germ/numeric_roots.hpp"
#include "germ/parse.hpp"
#include "germ/puiseux.hpp"
#include "oracles.hpp"

using germ::ExtendedRational;
using germ::Rational;
using germ::poly::MPoly;
using germ::poly::parse_poly;
using namespace germ::puiseux;

namespace {

Rational q(long n, long d = 1) { return Rational(germ::Integer(n), germ::Integer(d)); }

PuiseuxBranch make_branch(std::vector<std::pair<Rational, Rational>> terms, bool complete = true) {
    PuiseuxBranch b;
    germ::Integer den = 1;
    for (auto& [e, c] : terms) {
        b.terms.push_back({e, ComplexValue(c)});
        den = germ::lcm(den, e.denominator());
    }
    b.ramification = den.get_si();
    b.conjugates = den.get_si();
    b.residual_valuation = ExtendedRational::positive_infinity();
    b.next_exponent = complete ? ExtendedRational::positive_infinity() : ExtendedRational(q(10));
    return b;
}

std::vector<Rational> leading_exponents(const std::vector<PuiseuxBranch>& bs) {
    std::vector<Rational> out;
    for (const auto& b : bs) out.push_back(b.terms.front().exponent);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

long z2_order_at_origin(const MPoly& g) {
    return g.evaluate_at(germ::poly::Var::Z1, Rational(0)).order(germ::poly::Var::Z2);
}

}  // namespace

TEST_CASE("numeric roots cluster multiple roots") {
    // (x - 1)^3 (x + 2) (x - i)
    using cd = std::complex<double>;
    std::vector<cd> p{1.0};
    auto mul = [&](cd r) {
        std::vector<cd> out(p.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            out[k + 1] += p[k];
            out[k] -= r * p[k];
        }
        p = out;
    };
    for (cd r : {cd(1.0), cd(1.0), cd(1.0), cd(-2.0), cd(0.0, 1.0)}) mul(r);
    const auto roots = germ::numeric::polynomial_roots(p);
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(roots[0].value - cd(1.0)) < 1e-10);
    CHECK(roots[0].multiplicity == 3);
    CHECK(std::abs(roots[1].value - cd(0.0, 1.0)) < 1e-10);
    CHECK(std::abs(roots[2].value - cd(-2.0)) < 1e-10);
    const auto rat = germ::numeric::rational_roots({q(-3), q(2), q(1, 1)});  // x^2 + 2x - 3
    CHECK(rat == std::vector<Rational>{q(-3), q(1)});
}

TEST_CASE("Newton polygon examples") {
    const auto p = newton_polygon(parse_poly("z1^4 - z2^3"));
    REQUIRE(p.edges.size() == 1);
    CHECK(p.edges[0].exponent == q(4, 3));
    CHECK(p.edges[0].slope == q(-3, 4));
    CHECK(newton_polygon(parse_poly("z2 - z1")).edges.at(0).exponent == q(1));
    const auto two = newton_polygon(parse_poly("(z2^2 - z1^3)*(z2 - z1)"));
    REQUIRE(two.edges.size() == 2);
    CHECK(two.edges[0].exponent == q(3, 2));
    CHECK(two.edges[1].exponent == q(1));
    CHECK_THROWS_AS(newton_polygon(parse_poly("5")), std::invalid_argument);
}

TEST_CASE("Newton polygon supports every point") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        MPoly g;
        std::uniform_int_distribution<int> d(0, 6), c(-3, 3);
        for (int k = 0; k < 6; ++k) g.add_term({static_cast<unsigned>(d(rng)), static_cast<unsigned>(d(rng)), 0}, Rational(c(rng)));
        g.add_term({0, 0, 0}, -g.constant_term());
        if (g.is_constant()) continue;
        const auto p = newton_polygon(g);
        for (const auto& e : p.edges) {
            // Points lie on or above the supporting line b*i + a*j = kappa.
            const long a = e.exponent.numerator().get_si();
            const long b = e.exponent.denominator().get_si();
            const long kappa = b * e.lower.i + a * e.lower.j;
            for (const auto& pt : p.support) CHECK(b * pt.i + a * pt.j >= kappa);
        }
        for (std::size_t k = 1; k < p.edges.size(); ++k)
            CHECK(p.edges[k - 1].slope.abs() < p.edges[k].slope.abs());
    }
}

TEST_CASE("worked-example discriminant expands to one class of three roots") {
    const auto bs = puiseux_expand(parse_poly("z1^4 - z2^3"), q(3));
    REQUIRE(bs.size() == 1);
    const auto& b = bs[0];
    REQUIRE(b.terms.size() == 1);
    CHECK(b.terms[0].exponent == q(4, 3));
    CHECK(b.terms[0].coefficient == ComplexValue(q(1)));
    CHECK(b.ramification == 3);
    CHECK(b.conjugates == 3);
    CHECK(b.complete());
    const auto ch = characteristic_data(b);
    CHECK(ch.exponents == std::vector<Rational>{q(4, 3)});
    CHECK(ch.pairs == std::vector<std::pair<long, long>>{{4, 3}});
    CHECK(ch.valuation == ExtendedRational(q(4, 3)));
}

TEST_CASE("smooth branch is exact") {
    const auto bs = puiseux_expand(parse_poly("z2 - z1^2"), q(5));
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].ramification == 1);
    REQUIRE(bs[0].terms.size() == 1);
    CHECK(bs[0].terms[0].exponent == q(2));
    CHECK(bs[0].complete());
    CHECK(characteristic_data(bs[0]).exponents.empty());
}

TEST_CASE("oracle-built example with first characteristic exponent 5/2") {
    germ::testing::ParamBranch pb;
    pb.n = 2;
    pb.terms = {{5, q(1)}, {6, q(1)}};  // x^{5/2} + x^3
    const MPoly g = germ::testing::branch_norm(pb);
    CHECK(g == parse_poly("z2^2 - 2*z1^3*z2 + z1^6 - z1^5"));
    const auto bs = puiseux_expand(g);
    REQUIRE(bs.size() == 1);
    CHECK(bs[0].conjugates == 2);
    CHECK(characteristic_data(bs[0]).exponents == std::vector<Rational>{q(5, 2)});
    REQUIRE(bs[0].terms.size() == 2);
    CHECK(bs[0].terms[1].exponent == q(3));
    CHECK(bs[0].terms[1].coefficient == ComplexValue(q(1)));
}

TEST_CASE("truncated expansions meet the order") {
    // y = x / (1 - x) is not a polynomial: the expansion must be truncated.
    const MPoly g = parse_poly("z2 - z1 - z1*z2");
    const auto bs = puiseux_expand(g, q(4));
    REQUIRE(bs.size() == 1);
    CHECK_FALSE(bs[0].complete());
    CHECK(bs[0].residual_valuation > ExtendedRational(q(4)));
    CHECK(bs[0].terms.size() == 4);
    for (const auto& t : bs[0].terms) CHECK(t.coefficient == ComplexValue(q(1)));
    CHECK(substitution_valuation(g, bs[0]) == bs[0].residual_valuation);
}

TEST_CASE("irrational roots switch to numeric coefficients") {
    const auto bs = puiseux_expand(parse_poly("z2^2 - 2*z1^2"));
    REQUIRE(bs.size() == 2);
    for (const auto& b : bs) {
        CHECK_FALSE(b.exact_coefficients());
        CHECK(b.terms[0].exponent == q(1));
        CHECK(std::abs(std::abs(b.terms[0].coefficient.to_complex()) - std::sqrt(2.0)) < 1e-12);
        CHECK(b.terms[0].coefficient.radius() < kMaxErrorRadius);
        CHECK(substitution_valuation(parse_poly("z2^2 - 2*z1^2"), b).kind() ==
              ExtendedRational::Kind::PositiveInfinity);
    }
    const auto imag = puiseux_expand(parse_poly("z2^2 + z1^3"));
    REQUIRE(imag.size() == 1);
    CHECK(characteristic_data(imag[0]).exponents == std::vector<Rational>{q(3, 2)});
}

TEST_CASE("expansion input errors") {
    CHECK_THROWS_AS(puiseux_expand(parse_poly("(z2 - z1)^2*(z2 + z1^3)")), std::invalid_argument);
    CHECK_THROWS_AS(puiseux_expand(parse_poly("z1^3")), germ::CapabilityError);
    CHECK_THROWS_AS(puiseux_expand(parse_poly("z1*z2")), germ::CapabilityError);
    ExpandOptions tight;
    tight.max_ramification = 2;
    CHECK_THROWS_AS(puiseux_expand(parse_poly("z1^4 - z2^3"), tight), germ::CapabilityError);
}

TEST_CASE("characteristic data examples") {
    CHECK(characteristic_data(make_branch({{q(1), q(1)}, {q(2), q(1)}})).pairs.empty());
    const auto two = characteristic_data(make_branch({{q(3, 2), q(1)}, {q(7, 4), q(1)}}));
    CHECK(two.exponents == std::vector<Rational>{q(3, 2), q(7, 4)});
    CHECK(two.pairs == std::vector<std::pair<long, long>>{{3, 2}, {7, 2}});
    PuiseuxBranch unstable = make_branch({{q(3, 2), q(1)}});
    unstable.stable = false;
    CHECK_THROWS_AS(characteristic_data(unstable), std::invalid_argument);
    CHECK_THROWS_AS(characteristic_data(make_branch({{q(1, 2), q(1)}})), germ::CapabilityError);
    PuiseuxBranch zero;
    CHECK(characteristic_data(zero).valuation == ExtendedRational::negative_infinity());
}

TEST_CASE("contact orders") {
    const auto b = make_branch({{q(4, 3), q(1)}});
    CHECK(branch_distance_exponent(b, conjugate(b, 1)) == ExtendedRational(q(4, 3)));
    CHECK(branch_distance_exponent(b, b) == ExtendedRational::positive_infinity());
    CHECK(branch_distance_exponent(make_branch({{q(1), q(1)}, {q(2), q(1)}}),
                                   make_branch({{q(1), q(1)}, {q(3), q(1)}})) == ExtendedRational(q(2)));
    CHECK_THROWS_AS(branch_distance_exponent(make_branch({{q(1), q(1)}}, false),
                                             make_branch({{q(1), q(1)}, {q(11), q(1)}})),
                    std::domain_error);
    // Conjugating by half the class size negates odd terms exactly.
    const auto sq = make_branch({{q(3, 2), q(2)}, {q(2), q(1)}});
    const auto c1 = conjugate(sq, 1);
    CHECK(c1.terms[0].coefficient == ComplexValue(q(-2)));
    CHECK(c1.terms[1].coefficient == ComplexValue(q(1)));
}

TEST_CASE("oracle products: characteristic exponents are recovered") {
    std::mt19937_64 rng(20240601);
    int checked = 0;
    for (int trial = 0; checked < 40 && trial < 400; ++trial) {
        const int count = 1 + static_cast<int>(rng() % 2);
        std::vector<germ::testing::ParamBranch> parts;
        MPoly g(1);
        for (int k = 0; k < count; ++k) {
            parts.push_back(germ::testing::random_param_branch(rng));
            g *= germ::testing::branch_norm(parts.back());
        }
        if (!germ::poly::squarefree_in(g, germ::poly::Var::Z2)) continue;
        ++checked;
        const auto bs = puiseux_expand(g);
        std::vector<std::vector<Rational>> expected, got;
        for (const auto& p : parts) expected.push_back(p.characteristic);
        long ram = 0;
        for (const auto& b : bs) {
            got.push_back(characteristic_data(b).exponents);
            ram += b.ramification;
            CHECK(b.exact_coefficients());
            if (!b.complete()) CHECK(b.residual_valuation > ExtendedRational(b.truncation_order));
            CHECK(substitution_valuation(g, b) == b.residual_valuation);
            const auto ch = characteristic_data(b);
            long prod = 1;
            for (const auto& [m, n] : ch.pairs) prod *= n;
            CHECK(prod == b.ramification);
            for (std::size_t k = 0; k < ch.exponents.size(); ++k) {
                CHECK(ch.exponents[k] > q(1));
                if (k > 0) CHECK(ch.exponents[k - 1] < ch.exponents[k]);
            }
        }
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
        CHECK(ram == g.degree(germ::poly::Var::Z2));
        CHECK(ram == z2_order_at_origin(g));
        CHECK(leading_exponents(bs) == [&] {
            auto ex = newton_polygon(g).edges;
            std::vector<Rational> v;
            for (const auto& e : ex) v.push_back(e.exponent);
            std::sort(v.begin(), v.end());
            return v;
        }());
    }
    CHECK(checked == 40);
}
