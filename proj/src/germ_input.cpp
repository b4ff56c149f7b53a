#include <numeric>
#include <stdexcept>

#include "germ/errors.hpp"
#include "germ/pipeline.hpp"

namespace germ::pipeline {

using poly::Exponents;
using poly::Var;

namespace {

const Exponents kOrigin{0, 0, 0};

bool vanishes_at_origin(const MPoly& p) { return p.constant_term().is_zero(); }

void require_vertical(const GermInput& germ) {
    if (germ.form != InputForm::VerticalClass)
        throw CapabilityError("input is not of the form z3^d - g(z1, z2)");
}

MPoly one_like(const MPoly& p) { return MPoly::monomial(kOrigin, Rational(1), p.names()); }

}  // namespace

GermInput classify_input(const MPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("germ equation is zero");
    if (!vanishes_at_origin(f)) throw std::invalid_argument("germ equation does not vanish at the origin");
    GermInput out;
    out.f = f;
    int z3_terms = 0;
    Exponents z3_exp{};
    Rational z3_coeff;
    for (const auto& [e, c] : f.terms()) {
        if (e[2] == 0) continue;
        ++z3_terms;
        z3_exp = e;
        z3_coeff = c;
    }
    if (z3_terms == 1 && z3_exp[0] == 0 && z3_exp[1] == 0 && z3_exp[2] >= 2 && z3_coeff.is_one()) {
        MPoly g = MPoly::monomial(z3_exp, Rational(1), f.names()) - f;
        if (!g.is_zero()) {
            out.form = InputForm::VerticalClass;
            out.d = static_cast<int>(z3_exp[2]);
            out.g = std::move(g);
        }
    }
    return out;
}

std::string SingularLocusReport::embedded_equations(std::size_t i) const {
    return curve_branches.at(i).poly.names()[2] + " = 0, " + curve_branches.at(i).poly.str() + " = 0";
}

SingularLocusReport singular_locus(const GermInput& germ) {
    require_vertical(germ);
    SingularLocusReport report;
    report.d = germ.d;
    report.rule = "curve components of {z3 = 0, g = 0, grad g = 0}: factors of g through the origin "
                  "with multiplicity >= 2 (the same rule for every d >= 2)";
    const auto dec = poly::squarefree_decompose(germ.g, Var::Z2);
    MPoly reduced_odd = one_like(germ.g);
    for (const auto& f : dec.factors) {
        if (!vanishes_at_origin(f.factor)) continue;
        if (f.multiplicity >= 2) report.curve_branches.push_back({f.factor.primitive_integer(), f.multiplicity});
        if (germ.d == 2 ? (f.multiplicity % 2 == 1) : true) reduced_odd *= f.factor;
    }
    report.isolated_candidates = sample_isolated_candidates(reduced_odd);
    return report;
}

NormalizedGerm normalize_double_cover(const GermInput& germ) {
    require_vertical(germ);
    if (germ.d != 2) throw CapabilityError("normalization is implemented for d = 2 only");
    const auto dec = poly::squarefree_decompose(germ.g, Var::Z2);
    NormalizedGerm out;
    out.q = one_like(germ.g);
    out.s = MPoly::monomial(kOrigin, dec.unit, germ.g.names());
    for (const auto& f : dec.factors) {
        out.q *= f.factor.pow(f.multiplicity / 2);
        if (f.multiplicity % 2 == 1) out.s *= f.factor;
    }
    // Move the rational unit so q is primitive with positive leading coefficient.
    const MPoly q_prim = out.q.primitive_integer();
    const Rational ratio = out.q.leading_coefficient() / q_prim.leading_coefficient();
    out.q = q_prim;
    out.s *= ratio * ratio;
    out.f_bar = MPoly::monomial({0, 0, 2}, Rational(1), germ.g.names()) - out.s;
    out.smooth = smooth_at_origin(out.s);
    out.substitution = germ.g.names()[2] + " -> (" + out.q.str() + ")*w";
    return out;
}

bool smooth_at_origin(const MPoly& s) {
    if (s.is_constant() || !vanishes_at_origin(s)) return true;
    for (const Var v : {Var::Z1, Var::Z2, Var::Z3})
        if (!s.derivative(v).constant_term().is_zero()) return true;
    return false;
}

MPoly discriminant_curve(const MPoly& f_bar) {
    for (const auto& [e, c] : f_bar.terms())
        if (e[2] != 0 && !(e[0] == 0 && e[1] == 0 && c.is_one() && e[2] == static_cast<unsigned>(f_bar.degree(Var::Z3))))
            throw CapabilityError("discriminant expects z3^d - g(z1, z2)");
    if (!f_bar.depends_on(Var::Z3)) throw CapabilityError("discriminant expects z3^d - g(z1, z2)");
    const MPoly res = poly::resultant(f_bar, f_bar.derivative(Var::Z3), Var::Z3);
    if (res.is_zero()) throw std::domain_error("resultant is identically zero (non-reduced input)");
    if (res.is_constant()) throw std::domain_error("resultant is constant: no discriminant curve");
    const Var main = res.depends_on(Var::Z2) ? Var::Z2 : Var::Z1;
    const auto dec = poly::squarefree_decompose(res, main);
    MPoly out = one_like(res);
    for (const auto& f : dec.factors)
        if (vanishes_at_origin(f.factor)) out *= f.factor;
    if (out.is_constant()) throw std::domain_error("discriminant curve does not pass through the origin");
    return out.primitive_integer();
}

int axis_multiplicity(const MPoly& branch, Var axis) {
    if (branch.depends_on(Var::Z3)) throw std::invalid_argument("branch must be a polynomial in z1, z2");
    if (axis == Var::Z3) throw std::invalid_argument("axis must be z1 or z2");
    const Var fiber = axis == Var::Z1 ? Var::Z2 : Var::Z1;
    if (!branch.depends_on(fiber))
        throw CapabilityError("branch does not depend on the fiber variable: coordinates not generic");
    if (!vanishes_at_origin(branch)) throw std::invalid_argument("branch does not pass through the origin");
    if (branch.leading_coefficient_in(fiber).constant_term().is_zero())
        throw CapabilityError("leading coefficient in the fiber variable vanishes at 0: coordinates not generic");
    const MPoly restricted = branch.evaluate_at(axis, Rational(0));
    return restricted.order(fiber);
}

TransversalData transversal_data(int d, int m) {
    if (d < 2 || m < 2) throw std::invalid_argument("transversal data needs d >= 2 and m >= 2");
    return {d, m, (d - 1) * (m - 1), std::gcd(d, m)};
}

std::vector<RationalPoint> sample_isolated_candidates(const MPoly& s) {
    std::vector<RationalPoint> out;
    if (s.is_constant()) return out;
    const MPoly s1 = s.derivative(Var::Z1);
    const MPoly s2 = s.derivative(Var::Z2);
    for (int i = -4; i <= 4; ++i) {
        for (int j = -4; j <= 4; ++j) {
            const std::array<Rational, 3> p{Rational(i, 4), Rational(j, 4), Rational(0)};
            if (s.evaluate(p).is_zero() && s1.evaluate(p).is_zero() && s2.evaluate(p).is_zero())
                out.push_back({p[0], p[1]});
        }
    }
    return out;
}

}  // namespace germ::pipeline
