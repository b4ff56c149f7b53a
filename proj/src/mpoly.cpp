#include "germ/mpoly.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace germ::poly {

Var var_from_number(int number) {
    if (number < 1 || number > 3)
        throw std::invalid_argument("variable index must be 1, 2 or 3");
    return static_cast<Var>(number - 1);
}

VarNames default_var_names() { return {"z1", "z2", "z3"}; }

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = a[0] + a[1] + a[2];
    const unsigned db = b[0] + b[1] + b[2];
    if (da != db) return da > db;
    return a > b;
}

MPoly MPoly::variable(Var v, const VarNames& names) {
    Exponents e{0, 0, 0};
    e[static_cast<std::size_t>(v)] = 1;
    return monomial(e, Rational(1), names);
}

MPoly MPoly::monomial(const Exponents& e, const Rational& c, const VarNames& names) {
    MPoly p(names);
    p.add_term(e, c);
    return p;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{0, 0, 0});
}

Rational MPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

const Exponents& MPoly::leading_exponents() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const Rational& MPoly::leading_coefficient() const {
    if (terms_.empty()) throw std::domain_error("zero polynomial has no leading term");
    return terms_.begin()->second;
}

int MPoly::degree(Var v) const {
    int d = -1;
    const auto i = static_cast<std::size_t>(v);
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[i]));
    return d;
}

int MPoly::total_degree() const {
    return terms_.empty() ? -1 : static_cast<int>(leading_exponents()[0] + leading_exponents()[1] +
                                                  leading_exponents()[2]);
}

int MPoly::order(Var v) const {
    if (terms_.empty()) return -1;
    const auto i = static_cast<std::size_t>(v);
    int d = static_cast<int>(terms_.begin()->first[i]);
    for (const auto& [e, c] : terms_) d = std::min(d, static_cast<int>(e[i]));
    return d;
}

void MPoly::add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

std::vector<MPoly> MPoly::coefficients_in(Var v) const {
    const auto i = static_cast<std::size_t>(v);
    std::vector<MPoly> out(static_cast<std::size_t>(std::max(degree(v), 0)) + 1, MPoly(names_));
    for (const auto& [e, c] : terms_) {
        Exponents rest = e;
        rest[i] = 0;
        out[e[i]].add_term(rest, c);
    }
    if (terms_.empty()) out.clear();
    return out;
}

MPoly MPoly::from_coefficients(const std::vector<MPoly>& coeffs, Var v) {
    MPoly out = coeffs.empty() ? MPoly() : MPoly(coeffs.front().names());
    const auto i = static_cast<std::size_t>(v);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        for (const auto& [e, c] : coeffs[k].terms()) {
            if (e[i] != 0) throw std::invalid_argument("coefficient depends on the main variable");
            Exponents shifted = e;
            shifted[i] = static_cast<unsigned>(k);
            out.add_term(shifted, c);
        }
    }
    return out;
}

MPoly MPoly::leading_coefficient_in(Var v) const {
    if (terms_.empty()) return MPoly(names_);
    return coefficients_in(v).back();
}

MPoly MPoly::derivative(Var v) const {
    const auto i = static_cast<std::size_t>(v);
    MPoly out(names_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0) continue;
        Exponents d = e;
        d[i] -= 1;
        out.add_term(d, c * Rational(static_cast<long>(e[i])));
    }
    return out;
}

MPoly MPoly::pow(unsigned exponent) const {
    MPoly result = MPoly::monomial({0, 0, 0}, Rational(1), names_);
    MPoly base = *this;
    while (exponent > 0) {
        if (exponent & 1U) result *= base;
        exponent >>= 1U;
        if (exponent > 0) base *= base;
    }
    return result;
}

MPoly MPoly::substitute(Var v, const MPoly& value) const {
    const auto coeffs = coefficients_in(v);
    MPoly out(names_);
    // Horner in the substituted variable.
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        out *= value;
        out += *it;
    }
    return out;
}

MPoly MPoly::evaluate_at(Var v, const Rational& value) const {
    return substitute(v, MPoly::monomial({0, 0, 0}, value, names_));
}

Rational MPoly::evaluate(const std::array<Rational, kNumVars>& point) const {
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (e[i] != 0) t *= point[i].pow(e[i]);
        sum += t;
    }
    return sum;
}

std::complex<double> MPoly::evaluate(const std::array<std::complex<double>, kNumVars>& point) const {
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : terms_) {
        std::complex<double> t = c.to_double();
        for (std::size_t i = 0; i < kNumVars; ++i)
            if (e[i] != 0) t *= std::pow(point[i], static_cast<int>(e[i]));
        sum += t;
    }
    return sum;
}

MPoly MPoly::primitive_integer() const {
    if (terms_.empty()) return *this;
    Integer den = 1;
    for (const auto& [e, c] : terms_) den = lcm(den, c.denominator());
    Integer content = 0;
    for (const auto& [e, c] : terms_) content = gcd(content, (c * Rational(den)).numerator());
    Rational scale = Rational(den, content);
    if (leading_coefficient().sign() < 0) scale = -scale;
    return *this * scale;
}

MPoly MPoly::monic() const {
    if (terms_.empty()) return *this;
    return *this * leading_coefficient().inverse();
}

namespace {

void render_monomial(std::ostream& os, const Exponents& e, const VarNames& names, bool& wrote) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
        if (e[i] == 0) continue;
        if (wrote) os << '*';
        os << names[i];
        if (e[i] > 1) os << '^' << e[i];
        wrote = true;
    }
}

}  // namespace

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool negative = c.sign() < 0;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const Rational mag = c.abs();
        const bool is_const = e == Exponents{0, 0, 0};
        bool wrote = false;
        if (!mag.is_one() || is_const) {
            os << mag.str();
            wrote = true;
        }
        render_monomial(os, e, names_, wrote);
    }
    return os.str();
}

MPoly& MPoly::operator+=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly out(a.names_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    return out;
}

MPoly& MPoly::operator*=(const MPoly& o) {
    *this = *this * o;
    return *this;
}

MPoly& MPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MPoly MPoly::operator-() const {
    MPoly out = *this;
    for (auto& [e, v] : out.terms_) v = -v;
    return out;
}

MPoly partial_derivative(const MPoly& p, Var v) { return p.derivative(v); }

std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
    MPoly quotient(a.names());
    MPoly rem = a;
    const Exponents lb = b.leading_exponents();
    const Rational cb = b.leading_coefficient();
    while (!rem.is_zero()) {
        const Exponents lr = rem.leading_exponents();
        Exponents q{};
        for (std::size_t i = 0; i < kNumVars; ++i) {
            if (lr[i] < lb[i]) return std::nullopt;
            q[i] = lr[i] - lb[i];
        }
        const Rational c = rem.leading_coefficient() / cb;
        const MPoly step = MPoly::monomial(q, c, a.names());
        quotient += step;
        rem -= step * b;
    }
    return quotient;
}

std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

}  // namespace germ::poly
