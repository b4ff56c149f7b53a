#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "germ/errors.hpp"
#include "germ/puiseux.hpp"

namespace germ::puiseux {

namespace {

using cd = std::complex<double>;

bool coefficients_differ(const ComplexValue& a, const ComplexValue& b) {
    if (a.is_exact() && b.is_exact()) return a.exact() != b.exact();
    const cd x = a.to_complex();
    const cd y = b.to_complex();
    const double tol = 1e-7 * std::max({1.0, std::abs(x), std::abs(y)}) + 10.0 * (a.radius() + b.radius());
    return std::abs(x - y) > tol;
}

long exponent_in_units(const Rational& e, long n) {
    const Rational scaled = e * Rational(n);
    if (!scaled.is_integer()) throw std::invalid_argument("exponent denominator does not divide the class size");
    return scaled.to_long();
}

}  // namespace

PuiseuxCharacteristic characteristic_data(const PuiseuxBranch& branch) {
    if (!branch.stable) throw std::invalid_argument("branch not expanded far enough: ramification not yet stable");
    PuiseuxCharacteristic out;
    if (branch.terms.empty()) {
        out.valuation = ExtendedRational::negative_infinity();
        return out;
    }
    out.valuation = branch.terms.front().exponent;
    Integer den = 1;
    for (const auto& t : branch.terms) {
        const Integer next = lcm(den, t.exponent.denominator());
        if (next == den) continue;
        if (t.exponent <= Rational(1))
            throw CapabilityError("fractional exponent " + t.exponent.str() +
                                  " <= 1: branch tangent to the z2-axis, coordinates not generic");
        out.exponents.push_back(t.exponent);
        // r_j * (n_1 ... n_{j-1}) = m_j / n_j in lowest terms.
        const Rational reduced = t.exponent * Rational(den);
        out.pairs.emplace_back(reduced.numerator().get_si(), reduced.denominator().get_si());
        den = next;
    }
    if (den.get_si() != branch.ramification)
        throw std::invalid_argument("ramification does not match the exponent denominators");
    return out;
}

ExtendedRational branch_distance_exponent(const PuiseuxBranch& a, const PuiseuxBranch& b) {
    std::map<Rational, std::pair<ComplexValue, ComplexValue>> merged;
    for (const auto& t : a.terms) merged[t.exponent].first = t.coefficient;
    for (const auto& t : b.terms) merged[t.exponent].second = t.coefficient;
    const ExtendedRational bound = std::min(a.next_exponent, b.next_exponent);
    for (const auto& [e, cs] : merged) {
        if (!(ExtendedRational(e) < bound)) break;
        if (coefficients_differ(cs.first, cs.second)) return e;
    }
    if (bound.kind() == ExtendedRational::Kind::PositiveInfinity) return bound;
    throw std::domain_error("truncations too short to distinguish the branches");
}

PuiseuxBranch conjugate(const PuiseuxBranch& branch, long k) {
    const long n = branch.conjugates;
    if (n < 1) throw std::invalid_argument("conjugacy class size must be positive");
    PuiseuxBranch out = branch;
    for (auto& t : out.terms) {
        long m = (k % n) * (exponent_in_units(t.exponent, n) % n) % n;
        if (m < 0) m += n;
        if (m == 0) continue;
        if (2 * m == n) {
            if (t.coefficient.is_exact()) {
                t.coefficient = ComplexValue(-t.coefficient.exact());
            } else {
                t.coefficient = ComplexValue(-t.coefficient.to_complex(), t.coefficient.radius());
            }
            continue;
        }
        const cd zeta = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n));
        const cd v = t.coefficient.to_complex() * zeta;
        t.coefficient = ComplexValue(v, t.coefficient.radius() + 1e-15 * std::max(1.0, std::abs(v)));
    }
    return out;
}

namespace {

template <class K>
std::vector<K> series_mul(const std::vector<K>& a, const std::vector<K>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<K> out(a.size() + b.size() - 1, K(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
    return out;
}

template <class K>
void series_add(std::vector<K>& acc, const std::vector<K>& x, std::size_t shift) {
    if (acc.size() < x.size() + shift) acc.resize(x.size() + shift, K(0));
    for (std::size_t i = 0; i < x.size(); ++i) acc[i + shift] = acc[i + shift] + x[i];
}

// h(t^n, Y(t)) as a polynomial in t.
template <class K, class Conv>
std::vector<K> substituted(const MPoly& h, const PuiseuxBranch& b, long n, Conv conv) {
    std::vector<K> y;
    for (const auto& t : b.terms) {
        const auto idx = static_cast<std::size_t>(exponent_in_units(t.exponent, n));
        if (y.size() <= idx) y.resize(idx + 1, K(0));
        y[idx] = conv(t.coefficient);
    }
    const auto coeffs = h.coefficients_in(poly::Var::Z2);
    std::vector<K> result;
    std::vector<K> ypow{K(1)};
    for (const auto& c : coeffs) {
        for (const auto& [e, v] : c.terms()) {
            std::vector<K> scaled = ypow;
            for (auto& s : scaled) s = s * conv(ComplexValue(v));
            series_add(result, scaled, static_cast<std::size_t>(e[0]) * static_cast<std::size_t>(n));
        }
        ypow = series_mul(ypow, y);
    }
    return result;
}

}  // namespace

ExtendedRational substitution_valuation(const MPoly& h, const PuiseuxBranch& branch) {
    if (h.depends_on(poly::Var::Z3)) throw std::invalid_argument("substitution needs a polynomial in z1, z2");
    Integer den = 1;
    for (const auto& t : branch.terms) den = lcm(den, t.exponent.denominator());
    const long n = den.get_si();
    if (branch.exact_coefficients()) {
        const auto series = substituted<Rational>(h, branch, n, [](const ComplexValue& c) { return c.exact(); });
        for (std::size_t i = 0; i < series.size(); ++i)
            if (!series[i].is_zero()) return Rational(Integer(static_cast<long>(i)), Integer(n));
        return ExtendedRational::positive_infinity();
    }
    const auto series = substituted<cd>(h, branch, n, [](const ComplexValue& c) { return c.to_complex(); });
    double scale = 0.0;
    for (const auto& v : series) scale = std::max(scale, std::abs(v));
    double lead = 1.0;
    if (!branch.terms.empty()) lead = std::max(1.0, std::abs(branch.terms.front().coefficient.to_complex()));
    const double tol = 1e-6 * std::max(scale, lead) * 1e-3;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (std::abs(series[i]) > tol) return Rational(Integer(static_cast<long>(i)), Integer(n));
    return ExtendedRational::positive_infinity();
}

}  // namespace germ::puiseux
