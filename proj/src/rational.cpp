#include "germ/rational.hpp"

#include <stdexcept>

namespace germ {

Rational::Rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        t = b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational");
    const auto slash = s.find('/');
    auto parse_int = [](std::string t) {
        if (t.empty()) throw std::invalid_argument("malformed rational");
        std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (start == t.size()) throw std::invalid_argument("malformed rational");
        for (std::size_t i = start; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("malformed rational: " + t);
        if (t[0] == '+') t.erase(0, 1);
        return Integer(t, 10);
    };
    if (slash == std::string::npos) return Rational(parse_int(s));
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    trim(num);
    trim(den);
    return Rational(parse_int(num), parse_int(den));
}

long Rational::to_long() const {
    if (!v_.get_num().fits_slong_p()) throw std::overflow_error("rational numerator too large");
    return v_.get_num().get_si();
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(v_.get_den(), v_.get_num());
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Integer n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(n, d);
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Integer Rational::ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

bool exact_root(const Integer& value, unsigned long k, Integer& root) {
    if (value < 0) return false;
    return mpz_root(root.get_mpz_t(), value.get_mpz_t(), k) != 0;
}

bool exact_root(const Rational& value, unsigned long k, Rational& root) {
    if (k == 0) return false;
    const bool negative = value.sign() < 0;
    if (negative && k % 2 == 0) return false;
    Integer n, d;
    if (!exact_root(Integer(::abs(value.numerator())), k, n)) return false;
    if (!exact_root(value.denominator(), k, d)) return false;
    root = Rational(negative ? Integer(-n) : n, d);
    return true;
}

const Rational& ExtendedRational::value() const {
    if (kind_ != Kind::Finite) throw std::domain_error("infinite value has no finite part");
    return value_;
}

std::string ExtendedRational::str() const {
    switch (kind_) {
        case Kind::NegativeInfinity: return "-inf";
        case Kind::PositiveInfinity: return "inf";
        case Kind::Finite: break;
    }
    return value_.str();
}

}  // namespace germ
