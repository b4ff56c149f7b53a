#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace germ {

using Integer = mpz_class;

/// Exact rational number kept in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : v_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
    explicit Rational(const Integer& value) : v_(value) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& value) : v_(value) { v_.canonicalize(); }

    /// Parses "p", "-p" or "p/q". Throws std::invalid_argument.
    static Rational parse(std::string_view text);

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    /// Numerator as a machine integer; throws std::overflow_error if it does not fit.
    long to_long() const;

    Rational abs() const { return Rational(mpq_class(::abs(v_))); }
    Rational inverse() const;
    Rational pow(long exponent) const;
    Integer floor() const;
    Integer ceil() const;

    std::string str() const;

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-v_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

/// Exact integer k-th root of a non-negative integer when it exists.
bool exact_root(const Integer& value, unsigned long k, Integer& root);

/// Exact k-th root of a rational; for odd k negative values are allowed.
bool exact_root(const Rational& value, unsigned long k, Rational& root);

/// Value together with a "+infinity" / "-infinity" marker; used for valuations.
class ExtendedRational {
public:
    enum class Kind : std::uint8_t { NegativeInfinity, Finite, PositiveInfinity };

    ExtendedRational() = default;
    ExtendedRational(Rational value) : kind_(Kind::Finite), value_(std::move(value)) {}  // NOLINT
    static ExtendedRational positive_infinity() { return ExtendedRational(Kind::PositiveInfinity); }
    static ExtendedRational negative_infinity() { return ExtendedRational(Kind::NegativeInfinity); }

    Kind kind() const { return kind_; }
    bool is_finite() const { return kind_ == Kind::Finite; }
    const Rational& value() const;
    std::string str() const;

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
    }
    friend std::strong_ordering operator<=>(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
        return a.value_ <=> b.value_;
    }

private:
    explicit ExtendedRational(Kind k) : kind_(k) {}
    Kind kind_ = Kind::Finite;
    Rational value_;
};

}  // namespace germ

template <>
struct std::hash<germ::Rational> {
    std::size_t operator()(const germ::Rational& r) const noexcept {
        return std::hash<std::string>{}(r.str());
    }
};
