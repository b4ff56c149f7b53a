#include <algorithm>
#include <stdexcept>

#include "germ/algebra.hpp"

namespace germ::poly {

namespace {

MPoly quotient(const MPoly& a, const MPoly& b) {
    auto q = exact_divide(a, b);
    if (!q) throw std::logic_error("squarefree decomposition: inexact division");
    return *q;
}

void yun(const MPoly& p, Var v, std::vector<SquarefreeFactor>& out) {
    const MPoly dp = p.derivative(v);
    const MPoly a0 = gcd(p, dp);
    MPoly b = quotient(p, a0);
    MPoly c = quotient(dp, a0);
    MPoly d = c - b.derivative(v);
    for (unsigned i = 1; !b.is_constant(); ++i) {
        const MPoly a = gcd(b, d);
        if (!a.is_constant()) out.push_back({a, i});
        b = quotient(b, a);
        c = quotient(d, a);
        d = c - b.derivative(v);
    }
}

void decompose(const MPoly& p, Var v, std::vector<SquarefreeFactor>& out) {
    if (p.is_constant()) return;
    if (!p.depends_on(v)) {
        for (int i = static_cast<int>(kNumVars) - 1; i >= 0; --i) {
            const Var w = static_cast<Var>(i);
            if (p.depends_on(w)) {
                decompose(p, w, out);
                return;
            }
        }
        return;
    }
    const MPoly content = content_in(p, v);
    yun(quotient(p, content), v, out);
    decompose(content, v, out);
}

}  // namespace

MPoly SquarefreeDecomposition::expand() const {
    MPoly out = MPoly(unit);
    for (const auto& f : factors) {
        out *= f.factor.pow(f.multiplicity);
        out.set_names(f.factor.names());
    }
    return out;
}

SquarefreeDecomposition squarefree_decompose(const MPoly& p, Var main_var) {
    if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
    SquarefreeDecomposition result;
    decompose(p, main_var, result.factors);
    for (auto& f : result.factors) f.factor = f.factor.monic();
    std::sort(result.factors.begin(), result.factors.end(),
              [](const SquarefreeFactor& x, const SquarefreeFactor& y) {
                  if (x.multiplicity != y.multiplicity) return x.multiplicity < y.multiplicity;
                  return x.factor.str() < y.factor.str();
              });
    MPoly product = MPoly::monomial({0, 0, 0}, Rational(1), p.names());
    for (const auto& f : result.factors) product *= f.factor.pow(f.multiplicity);
    const MPoly unit = quotient(p, product);
    if (!unit.is_constant()) throw std::logic_error("squarefree decomposition lost a factor");
    result.unit = unit.constant_term();
    return result;
}

MPoly squarefree_part(const MPoly& p, Var main_var) {
    const auto dec = squarefree_decompose(p, main_var);
    MPoly out = MPoly::monomial({0, 0, 0}, Rational(1), p.names());
    for (const auto& f : dec.factors) out *= f.factor;
    return out;
}

bool squarefree_in(const MPoly& p, Var main_var) {
    if (p.is_zero()) return false;
    const int deg = p.degree(main_var);
    if (deg <= 1) return true;
    for (long a = 2; a < 12; ++a) {
        MPoly s = p;
        long value = a;
        for (const Var v : {Var::Z1, Var::Z2, Var::Z3}) {
            if (v == main_var || !s.depends_on(v)) continue;
            s = s.evaluate_at(v, Rational(value));
            value = 3 * value + 1;
        }
        if (s.degree(main_var) != deg) continue;
        if (!gcd(s, s.derivative(main_var)).depends_on(main_var)) return true;
    }
    return !gcd(p, p.derivative(main_var)).depends_on(main_var);
}

}  // namespace germ::poly
