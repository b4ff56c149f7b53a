#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "germ/rational.hpp"

namespace germ::poly {

/// Polynomial variables; indices 0, 1, 2 correspond to z1, z2, z3.
enum class Var : std::uint8_t { Z1 = 0, Z2 = 1, Z3 = 2 };

inline constexpr std::size_t kNumVars = 3;

/// Maps a one-based variable number to a Var; throws std::invalid_argument outside 1..3.
Var var_from_number(int number);

using Exponents = std::array<unsigned, kNumVars>;
using VarNames = std::array<std::string, kNumVars>;

VarNames default_var_names();

/// Graded-lex order, largest first: total degree, then z1, z2, z3.
struct GrlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Sparse polynomial with rational coefficients in three variables.
/// Zero coefficients are never stored; terms iterate in descending grlex order.
class MPoly {
public:
    using TermMap = std::map<Exponents, Rational, GrlexGreater>;

    MPoly() : names_(default_var_names()) {}
    explicit MPoly(VarNames names) : names_(std::move(names)) {}
    MPoly(const Rational& c) : names_(default_var_names()) { add_term({0, 0, 0}, c); }  // NOLINT
    MPoly(long c) : MPoly(Rational(c)) {}  // NOLINT
    MPoly(int c) : MPoly(Rational(c)) {}  // NOLINT

    static MPoly variable(Var v, const VarNames& names = default_var_names());
    static MPoly monomial(const Exponents& e, const Rational& c,
                          const VarNames& names = default_var_names());

    const TermMap& terms() const { return terms_; }
    const VarNames& names() const { return names_; }
    void set_names(VarNames names) { names_ = std::move(names); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    std::size_t size() const { return terms_.size(); }
    Rational coefficient(const Exponents& e) const;
    Rational constant_term() const { return coefficient({0, 0, 0}); }

    /// Leading grlex term; the polynomial must be nonzero.
    const Exponents& leading_exponents() const;
    const Rational& leading_coefficient() const;

    /// Degree in one variable; -1 for the zero polynomial.
    int degree(Var v) const;
    int total_degree() const;
    /// Smallest exponent of v over all terms; -1 for the zero polynomial.
    int order(Var v) const;
    bool depends_on(Var v) const { return degree(v) > 0; }

    void add_term(const Exponents& e, const Rational& c);

    /// Coefficients as polynomials in v: result[k] multiplies v^k.
    std::vector<MPoly> coefficients_in(Var v) const;
    static MPoly from_coefficients(const std::vector<MPoly>& coeffs, Var v);
    MPoly leading_coefficient_in(Var v) const;

    MPoly derivative(Var v) const;
    MPoly pow(unsigned exponent) const;
    MPoly substitute(Var v, const MPoly& value) const;
    MPoly evaluate_at(Var v, const Rational& value) const;
    Rational evaluate(const std::array<Rational, kNumVars>& point) const;
    std::complex<double> evaluate(const std::array<std::complex<double>, kNumVars>& point) const;

    /// Multiplies by the common denominator and divides by the integer content,
    /// then fixes the sign so the leading coefficient is positive.
    MPoly primitive_integer() const;
    /// Divides by the leading coefficient.
    MPoly monic() const;

    std::string str() const;

    MPoly& operator+=(const MPoly& o);
    MPoly& operator-=(const MPoly& o);
    MPoly& operator*=(const MPoly& o);
    MPoly& operator*=(const Rational& c);

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(const MPoly& a, const MPoly& b);
    friend MPoly operator*(MPoly a, const Rational& c) { return a *= c; }
    friend MPoly operator*(const Rational& c, MPoly a) { return a *= c; }
    MPoly operator-() const;

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
    VarNames names_;
};

MPoly partial_derivative(const MPoly& p, Var v);

/// Exact quotient a / b when b divides a in Q[z1,z2,z3]; nullopt otherwise.
std::optional<MPoly> exact_divide(const MPoly& a, const MPoly& b);

std::ostream& operator<<(std::ostream& os, const MPoly& p);

}  // namespace germ::poly
