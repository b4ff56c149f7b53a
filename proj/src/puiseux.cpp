#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "germ/algebra.hpp"
#include "germ/errors.hpp"
#include "germ/numeric_roots.hpp"
#include "germ/puiseux.hpp"

namespace germ::puiseux {

namespace {

using cd = std::complex<double>;
using Key = std::pair<long, long>;  // (i, j): exponents of s and w

// Relative size below which numeric coefficients of G count as zero.
constexpr double kZeroTolerance = 1e-9;
constexpr int kMaxSteps = 4000;

template <class K>
using BiPoly = std::map<Key, K>;

bool near_zero(const Rational& v, double) { return v.is_zero(); }
bool near_zero(const cd& v, double scale) { return std::abs(v) <= kZeroTolerance * scale; }
double magnitude(const Rational& v) { return std::abs(v.to_double()); }
double magnitude(const cd& v) { return std::abs(v); }
cd to_cd(const Rational& v) { return {v.to_double(), 0.0}; }
Rational binomial(long n, long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}
cd binomial_cd(long n, long k) { return binomial(n, k).to_double(); }

// g(x, y) = s^kacc * G(s, w) with x = s^N, y = P(s) + s^sigma * w.
template <class K>
struct State {
    BiPoly<K> G;
    long N = 1;
    long sigma = 0;
    long kacc = 0;
    std::vector<std::pair<Rational, K>> terms;
    double error = 0.0;
};

State<cd> to_numeric(const State<Rational>& s) {
    State<cd> out;
    for (const auto& [k, v] : s.G) out.G[k] = to_cd(v);
    out.N = s.N;
    out.sigma = s.sigma;
    out.kacc = s.kacc;
    for (const auto& [e, c] : s.terms) out.terms.emplace_back(e, to_cd(c));
    return out;
}

template <class K>
double scale_of(const BiPoly<K>& G) {
    double m = 0.0;
    for (const auto& [k, v] : G) m = std::max(m, magnitude(v));
    return m;
}

Rational default_order(const std::vector<Rational>& exponents) {
    Integer den = 1;
    Rational last(1);
    for (const auto& e : exponents) {
        const Integer next = lcm(den, e.denominator());
        if (next != den) last = e;
        den = next;
    }
    return last + Rational(1);
}

struct Context {
    std::optional<Rational> order;
    long max_ramification = 64;
};

class Expander {
public:
    explicit Expander(Context ctx) : ctx_(std::move(ctx)) {}

    template <class K>
    void expand(State<K> s, std::vector<PuiseuxBranch>& out) {
        for (int step = 0;; ++step) {
            if (step > kMaxSteps) throw NumericError("Puiseux expansion did not terminate");
            if (s.G.empty()) throw NumericError("expansion lost all terms");
            long jmin = s.G.begin()->first.second;
            long j0 = -1;
            for (const auto& [k, v] : s.G) {
                jmin = std::min(jmin, k.second);
                if (k.first == 0 && (j0 < 0 || k.second < j0)) j0 = k.second;
            }
            if (j0 < 0) throw NumericError("expansion lost the w-axis point");
            if (jmin > 0) {
                if (jmin > 1) throw std::invalid_argument("polynomial is not squarefree");
                emit(s, ExtendedRational::positive_infinity(), ExtendedRational::positive_infinity(), out);
                BiPoly<K> shifted;
                for (const auto& [k, v] : s.G) shifted[{k.first, k.second - 1}] = v;
                s.G = std::move(shifted);
                j0 -= 1;
                if (j0 == 0) return;
            }
            if (j0 == 1) {
                long i0 = -1;
                for (const auto& [k, v] : s.G)
                    if (k.second == 0 && (i0 < 0 || k.first < i0)) i0 = k.first;
                const Rational next(Integer(s.sigma + i0), Integer(s.N));
                const Rational residual(Integer(s.kacc + i0), Integer(s.N));
                const Rational order = effective_order(s);
                if (residual > order && next > order) {
                    emit(s, residual, next, out);
                    return;
                }
                const K c = -s.G.at({i0, 0}) / s.G.at({0, 1});
                s = substitute(s, i0, 1, c, 1, 0.0);
                continue;
            }
            branch_out(s, out);
            return;
        }
    }

private:
    template <class K>
    Rational effective_order(const State<K>& s) const {
        if (ctx_.order) return *ctx_.order;
        std::vector<Rational> exps;
        for (const auto& [e, c] : s.terms) exps.push_back(e);
        return default_order(exps);
    }

    template <class K>
    void emit(const State<K>& s, const ExtendedRational& residual, const ExtendedRational& next,
              std::vector<PuiseuxBranch>& out) const {
        PuiseuxBranch b;
        Integer den = 1;
        for (const auto& [e, c] : s.terms) {
            den = lcm(den, e.denominator());
            if constexpr (std::is_same_v<K, Rational>) {
                b.terms.push_back({e, ComplexValue(c)});
            } else {
                b.terms.push_back({e, ComplexValue(c, s.error + 1e-13 * std::max(1.0, std::abs(c)))});
            }
        }
        b.ramification = den.get_si();
        b.conjugates = s.N;
        b.truncation_order = effective_order(s);
        b.residual_valuation = residual;
        b.next_exponent = next;
        b.stable = true;
        out.push_back(std::move(b));
    }

    // G(s^b, s^a (c + w)) / s^kappa; entries at i = 0 with w-degree below r vanish in theory.
    template <class K>
    State<K> substitute(const State<K>& s, long a, long b, const K& c, long r, double root_error) const {
        if (s.N * b > ctx_.max_ramification)
            throw CapabilityError("ramification exceeds the configured bound");
        long kappa = -1;
        for (const auto& [k, v] : s.G) {
            const long val = b * k.first + a * k.second;
            if (kappa < 0 || val < kappa) kappa = val;
        }
        State<K> out;
        for (const auto& [k, v] : s.G) {
            const long ni = b * k.first + a * k.second - kappa;
            K cpow = K(1);
            std::vector<K> powers(static_cast<std::size_t>(k.second) + 1);
            for (long l = 0; l <= k.second; ++l) {
                powers[static_cast<std::size_t>(l)] = cpow;
                cpow = cpow * c;
            }
            for (long l = 0; l <= k.second; ++l) {
                K coeff = v * powers[static_cast<std::size_t>(k.second - l)];
                if constexpr (std::is_same_v<K, Rational>) {
                    coeff = coeff * binomial(k.second, l);
                } else {
                    coeff = coeff * binomial_cd(k.second, l);
                }
                auto [it, inserted] = out.G.try_emplace({ni, l}, coeff);
                if (!inserted) it->second = it->second + coeff;
            }
        }
        const double scale = scale_of(out.G);
        for (auto it = out.G.begin(); it != out.G.end();) {
            const bool forced = it->first.first == 0 && it->first.second < r;
            if (forced || near_zero(it->second, scale)) {
                if constexpr (std::is_same_v<K, Rational>) {
                    if (forced && !it->second.is_zero()) throw std::logic_error("edge root is not a root");
                }
                it = out.G.erase(it);
            } else {
                ++it;
            }
        }
        out.N = s.N * b;
        out.sigma = b * s.sigma + a;
        out.kacc = b * s.kacc + kappa;
        out.terms = s.terms;
        out.terms.emplace_back(Rational(Integer(out.sigma), Integer(out.N)), c);
        out.error = std::max(s.error, root_error);
        return out;
    }

    template <class K>
    static std::vector<PolygonEdge> edges_of(const BiPoly<K>& G) {
        MPoly support;
        for (const auto& [k, v] : G)
            support.add_term({static_cast<unsigned>(k.first), static_cast<unsigned>(k.second), 0}, Rational(1));
        auto edges = newton_polygon(support).edges;
        std::reverse(edges.begin(), edges.end());
        return edges;
    }

    // Coefficients of phi(u) = sum over edge points G_ij u^{(j - j_low)/b}.
    template <class K>
    static std::vector<K> edge_polynomial(const BiPoly<K>& G, const PolygonEdge& e, long a, long b) {
        const long kappa = b * e.lower.i + a * e.lower.j;
        std::vector<K> phi(static_cast<std::size_t>((e.upper.j - e.lower.j) / b) + 1, K(0));
        for (const auto& [k, v] : G)
            if (b * k.first + a * k.second == kappa)
                phi[static_cast<std::size_t>((k.second - e.lower.j) / b)] = v;
        return phi;
    }

    static cd principal_root(cd u, long b) {
        const double r = std::pow(std::abs(u), 1.0 / static_cast<double>(b));
        const double t = numeric::principal_argument(u) / static_cast<double>(b);
        return std::polar(r, t);
    }

    void numeric_child(const State<cd>& s, long a, long b, cd u, double u_err, long r,
                       std::vector<PuiseuxBranch>& out) {
        const cd c = principal_root(u, b);
        const double c_err =
            u_err / (static_cast<double>(b) * std::max(1e-300, std::pow(std::abs(u), (b - 1.0) / b)));
        expand(substitute(s, a, b, c, r, c_err), out);
    }

    void branch_out(const State<cd>& s, std::vector<PuiseuxBranch>& out) {
        for (const auto& e : edges_of(s.G)) {
            const long a = e.exponent.numerator().get_si();
            const long b = e.exponent.denominator().get_si();
            const auto phi = edge_polynomial(s.G, e, a, b);
            for (const auto& root : numeric::polynomial_roots(phi)) {
                if (std::abs(root.value) == 0.0) continue;
                numeric_child(s, a, b, root.value, root.radius, static_cast<long>(root.multiplicity), out);
            }
        }
    }

    void branch_out(const State<Rational>& s, std::vector<PuiseuxBranch>& out) {
        for (const auto& e : edges_of(s.G)) {
            const long a = e.exponent.numerator().get_si();
            const long b = e.exponent.denominator().get_si();
            const auto phi = edge_polynomial(s.G, e, a, b);
            MPoly phi_poly;
            for (std::size_t k = 0; k < phi.size(); ++k) phi_poly.add_term({static_cast<unsigned>(k), 0, 0}, phi[k]);
            const auto dec = poly::squarefree_decompose(phi_poly, poly::Var::Z1);
            for (const auto& f : dec.factors) {
                const long r = static_cast<long>(f.multiplicity);
                std::vector<Rational> coeffs;
                for (const auto& cf : f.factor.coefficients_in(poly::Var::Z1)) coeffs.push_back(cf.constant_term());
                MPoly rest = f.factor;
                for (const Rational& u : numeric::rational_roots(coeffs)) {
                    rest = *poly::exact_divide(rest, poly::MPoly::variable(poly::Var::Z1) - MPoly(u));
                    exact_root_child(s, a, b, u, r, out);
                }
                if (rest.degree(poly::Var::Z1) > 0) {
                    std::vector<cd> numeric_coeffs;
                    for (const auto& cf : rest.coefficients_in(poly::Var::Z1))
                        numeric_coeffs.push_back(to_cd(cf.constant_term()));
                    const State<cd> ns = to_numeric(s);
                    for (const auto& root : numeric::polynomial_roots(numeric_coeffs))
                        numeric_child(ns, a, b, root.value, root.radius, r, out);
                }
            }
        }
    }

    void exact_root_child(const State<Rational>& s, long a, long b, const Rational& u, long r,
                          std::vector<PuiseuxBranch>& out) {
        std::vector<Rational> candidates;
        Rational c;
        if (exact_root(u, static_cast<unsigned long>(b), c)) {
            candidates.push_back(c);
            if (b % 2 == 0) candidates.push_back(-c);
        }
        if (candidates.empty()) {
            numeric_child(to_numeric(s), a, b, to_cd(u), 0.0, r, out);
            return;
        }
        std::vector<PuiseuxBranch> best;
        long best_numeric = -1;
        for (const auto& cand : candidates) {
            std::vector<PuiseuxBranch> trial;
            expand(substitute(s, a, b, cand, r, 0.0), trial);
            const long numeric = std::count_if(trial.begin(), trial.end(),
                                               [](const PuiseuxBranch& br) { return !br.exact_coefficients(); });
            if (best_numeric < 0 || numeric < best_numeric) {
                best = std::move(trial);
                best_numeric = numeric;
            }
            if (best_numeric == 0) break;
        }
        for (auto& br : best) out.push_back(std::move(br));
    }

    Context ctx_;
};

}  // namespace

ComplexValue::ComplexValue(std::complex<double> value, double radius) : v_(Numeric{value, radius}) {
    if (!(radius < kMaxErrorRadius)) throw NumericError("numeric coefficient error radius too large");
}

std::complex<double> ComplexValue::to_complex() const {
    if (is_exact()) return {exact().to_double(), 0.0};
    return std::get<Numeric>(v_).value;
}

bool ComplexValue::is_zero() const {
    if (is_exact()) return exact().is_zero();
    return std::abs(std::get<Numeric>(v_).value) <= std::get<Numeric>(v_).radius;
}

std::string ComplexValue::str() const {
    if (is_exact()) return exact().str();
    const auto z = std::get<Numeric>(v_).value;
    char buf[96];
    std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", z.real(), z.imag());
    return buf;
}

bool PuiseuxBranch::exact_coefficients() const {
    return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.coefficient.is_exact(); });
}

std::complex<double> PuiseuxBranch::evaluate(std::complex<double> x) const {
    std::complex<double> sum = 0.0;
    const double r = std::abs(x);
    const double theta = std::arg(x);
    for (const auto& t : terms) {
        const double e = t.exponent.to_double();
        sum += t.coefficient.to_complex() * std::polar(std::pow(r, e), e * theta);
    }
    return sum;
}

std::string PuiseuxBranch::str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& t : terms) {
        if (!s.empty()) s += " + ";
        s += t.coefficient.str() + "*z1^(" + t.exponent.str() + ")";
    }
    if (!complete()) s += " + O(z1^(" + next_exponent.str() + "))";
    return s;
}

std::vector<PuiseuxBranch> puiseux_expand(const MPoly& g, const ExpandOptions& options) {
    if (g.is_zero()) throw std::invalid_argument("cannot expand the zero polynomial");
    if (g.depends_on(poly::Var::Z3)) throw std::invalid_argument("expansion needs a polynomial in z1, z2");
    if (!g.constant_term().is_zero()) throw std::invalid_argument("polynomial does not vanish at the origin");
    if (!g.depends_on(poly::Var::Z2)) throw CapabilityError("polynomial has z2-degree 0: no branch over the z1-axis");
    if (g.evaluate_at(poly::Var::Z1, Rational(0)).is_zero())
        throw CapabilityError("polynomial is not z2-regular (divisible by z1): coordinates not generic");
    if (!poly::squarefree_in(g, poly::Var::Z2))
        throw std::invalid_argument("polynomial is not squarefree");
    if (options.max_ramification < 1) throw std::invalid_argument("ramification bound must be positive");

    State<Rational> s;
    for (const auto& [e, c] : g.terms()) s.G[{static_cast<long>(e[0]), static_cast<long>(e[1])}] = c;
    std::vector<PuiseuxBranch> out;
    Expander(Context{options.order, options.max_ramification}).expand(std::move(s), out);
    std::stable_sort(out.begin(), out.end(), [](const PuiseuxBranch& x, const PuiseuxBranch& y) {
        const Rational ex = x.terms.empty() ? Rational(0) : x.terms.front().exponent;
        const Rational ey = y.terms.empty() ? Rational(0) : y.terms.front().exponent;
        return ex < ey;
    });
    return out;
}

std::vector<PuiseuxBranch> puiseux_expand(const MPoly& g, const Rational& order) {
    ExpandOptions opts;
    opts.order = order;
    return puiseux_expand(g, opts);
}

}  // namespace germ::puiseux
