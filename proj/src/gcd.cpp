#include <stdexcept>

#include "germ/algebra.hpp"

namespace germ::poly {

namespace {

MPoly one_like(const MPoly& p) { return MPoly::monomial({0, 0, 0}, Rational(1), p.names()); }

std::optional<Var> main_variable(const MPoly& a, const MPoly& b) {
    for (int i = static_cast<int>(kNumVars) - 1; i >= 0; --i) {
        const Var v = static_cast<Var>(i);
        if (a.depends_on(v) || b.depends_on(v)) return v;
    }
    return std::nullopt;
}

MPoly divide_exactly(const MPoly& a, const MPoly& b) {
    auto q = exact_divide(a, b);
    if (!q) throw std::logic_error("expected exact division failed");
    return *q;
}

MPoly primitive_part(const MPoly& p, Var v) {
    if (p.is_zero()) return p;
    return divide_exactly(p, content_in(p, v));
}

// Subresultant PRS for primitive a, b in v; returns the primitive gcd.
MPoly subresultant_gcd(MPoly a, MPoly b, Var v) {
    if (a.degree(v) < b.degree(v)) std::swap(a, b);
    MPoly g = one_like(a);
    MPoly h = one_like(a);
    for (;;) {
        const int delta = a.degree(v) - b.degree(v);
        MPoly r = pseudo_remainder(a, b, v);
        if (r.is_zero()) break;
        if (r.degree(v) == 0) return one_like(a);
        a = b;
        b = divide_exactly(r, g * h.pow(static_cast<unsigned>(delta)));
        g = a.leading_coefficient_in(v);
        if (delta == 0) {
            // h stays unchanged.
        } else {
            h = divide_exactly(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
    return primitive_part(b, v);
}

}  // namespace

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, Var v) {
    if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
    const int db = b.degree(v);
    int steps = a.degree(v) - db + 1;
    if (steps <= 0) return a;
    const MPoly lcb = b.leading_coefficient_in(v);
    MPoly r = a;
    while (!r.is_zero() && r.degree(v) >= db) {
        Exponents shift{0, 0, 0};
        shift[static_cast<std::size_t>(v)] = static_cast<unsigned>(r.degree(v) - db);
        r = lcb * r - r.leading_coefficient_in(v) * MPoly::monomial(shift, Rational(1), a.names()) * b;
        --steps;
    }
    if (steps > 0) r *= lcb.pow(static_cast<unsigned>(steps));
    return r;
}

MPoly content_in(const MPoly& p, Var v) {
    if (p.is_zero()) return p;
    MPoly c(p.names());
    for (const auto& coeff : p.coefficients_in(v)) {
        if (coeff.is_zero()) continue;
        c = gcd(c, coeff);
        if (c.is_constant()) break;
    }
    return c;
}

MPoly gcd(const MPoly& a, const MPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    const auto v = main_variable(a, b);
    if (!v) return one_like(a);
    if (!a.depends_on(*v)) return gcd(a, content_in(b, *v));
    if (!b.depends_on(*v)) return gcd(content_in(a, *v), b);
    const MPoly ca = content_in(a, *v);
    const MPoly cb = content_in(b, *v);
    const MPoly c = gcd(ca, cb);
    const MPoly pp = subresultant_gcd(divide_exactly(a, ca), divide_exactly(b, cb), *v);
    return (c * pp).monic();
}

MPoly bivariate_gcd(const MPoly& a, const MPoly& b) {
    if (a.depends_on(Var::Z3) || b.depends_on(Var::Z3))
        throw std::invalid_argument("bivariate_gcd expects polynomials in z1, z2");
    return gcd(a, b);
}

}  // namespace germ::poly
