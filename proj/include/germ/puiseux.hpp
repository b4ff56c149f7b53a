#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "germ/mpoly.hpp"
#include "germ/rational.hpp"

namespace germ::puiseux {

using poly::MPoly;

/// Largest error radius accepted for a numeric coefficient.
inline constexpr double kMaxErrorRadius = 1e-8;

/// A Puiseux coefficient: exact rational, or a complex double with an error radius.
class ComplexValue {
public:
    struct Numeric {
        std::complex<double> value;
        double radius = 0.0;
        friend bool operator==(const Numeric&, const Numeric&) = default;
    };

    ComplexValue() : v_(Rational(0)) {}
    ComplexValue(Rational exact) : v_(std::move(exact)) {}  // NOLINT(google-explicit-constructor)
    /// Throws NumericError when radius >= kMaxErrorRadius.
    ComplexValue(std::complex<double> value, double radius);

    bool is_exact() const { return std::holds_alternative<Rational>(v_); }
    const Rational& exact() const { return std::get<Rational>(v_); }
    std::complex<double> to_complex() const;
    double radius() const { return is_exact() ? 0.0 : std::get<Numeric>(v_).radius; }
    bool is_zero() const;
    std::string str() const;

    friend bool operator==(const ComplexValue&, const ComplexValue&) = default;

private:
    std::variant<Rational, Numeric> v_;
};

struct Term {
    Rational exponent;
    ComplexValue coefficient;
    friend bool operator==(const Term&, const Term&) = default;
};

/// y = sum c_k x^{e_k}: one representative of a conjugacy class of roots of g(x, y) = 0 near 0.
struct PuiseuxBranch {
    std::vector<Term> terms;              // strictly increasing exponents, nonzero coefficients
    long ramification = 1;                // lcm of exponent denominators present
    long conjugates = 1;                  // size of the conjugacy class
    Rational truncation_order;            // the order requested for the expansion
    ExtendedRational residual_valuation;  // valuation of g(x, truncated y); +inf if exact
    ExtendedRational next_exponent;       // terms below this are final; +inf if complete
    bool stable = true;                   // ramification can no longer grow

    bool complete() const { return next_exponent.kind() == ExtendedRational::Kind::PositiveInfinity; }
    bool exact_coefficients() const;
    /// Evaluates the truncated series with the principal power x^e = |x|^e exp(i e arg x).
    std::complex<double> evaluate(std::complex<double> x) const;
    std::string str() const;

    friend bool operator==(const PuiseuxBranch&, const PuiseuxBranch&) = default;
};

struct LatticePoint {
    long i = 0;  // exponent of z1
    long j = 0;  // exponent of z2
    friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

struct PolygonEdge {
    LatticePoint upper;  // endpoint with larger z2 exponent
    LatticePoint lower;
    Rational slope;      // dj/di, negative
    Rational exponent;   // candidate leading exponent -1/slope
};

struct NewtonPolygon {
    std::vector<LatticePoint> support;  // sorted
    std::vector<PolygonEdge> edges;     // increasing slope magnitude
};

/// Compact lower edges of the Newton polygon of g(z1, z2) between the z2-axis
/// side and the z1-axis side. Throws std::invalid_argument for constant or
/// trivariate g, or g(0, 0) != 0.
NewtonPolygon newton_polygon(const MPoly& g);

struct ExpandOptions {
    std::optional<Rational> order;  // default: last characteristic exponent + 1
    long max_ramification = 64;
};

/// Newton-Puiseux expansion of the roots of g(z1, z2) = 0 tending to 0,
/// one representative per conjugacy class. Throws std::invalid_argument for
/// non-squarefree or non-bivariate input, CapabilityError when g is not
/// z2-regular or the ramification bound is exceeded.
std::vector<PuiseuxBranch> puiseux_expand(const MPoly& g, const ExpandOptions& options = {});
std::vector<PuiseuxBranch> puiseux_expand(const MPoly& g, const Rational& order);

struct PuiseuxCharacteristic {
    std::vector<Rational> exponents;
    std::vector<std::pair<long, long>> pairs;  // (m_j, n_j)
    ExtendedRational valuation;                 // leading exponent, -inf for the zero series
    friend bool operator==(const PuiseuxCharacteristic&, const PuiseuxCharacteristic&) = default;
};

/// Characteristic exponents r_j (where the exponent denominators' lcm grows)
/// and pairs r_j = m_j / (n_1 ... n_j). Throws std::invalid_argument if the
/// branch is not stable and CapabilityError if a fractional exponent is <= 1.
PuiseuxCharacteristic characteristic_data(const PuiseuxBranch& branch);

/// Contact order: exponent of the first differing term. +inf when the
/// branches agree and both are complete. Throws std::domain_error when the
/// truncations end before a difference is seen.
ExtendedRational branch_distance_exponent(const PuiseuxBranch& a, const PuiseuxBranch& b);

/// The k-th conjugate: x^{1/N} -> zeta_N^k x^{1/N}, N = conjugates.
PuiseuxBranch conjugate(const PuiseuxBranch& branch, long k);

/// Valuation in z1 of h(z1, branch(z1)) for the truncated branch; numeric
/// coefficients use a relative tolerance. Returns +inf for the zero series.
ExtendedRational substitution_valuation(const MPoly& h, const PuiseuxBranch& branch);

}  // namespace germ::puiseux
