#pragma once

#include <complex>
#include <vector>

#include "germ/rational.hpp"

namespace germ::numeric {

struct Root {
    std::complex<double> value;
    unsigned multiplicity = 1;
    double radius = 0.0;  // estimated error of value
};

/// Roots of sum coeffs[k] x^k with clustering of multiple roots.
/// Sorted by argument in [0, 2pi), then modulus. Throws std::invalid_argument
/// for the zero polynomial.
std::vector<Root> polynomial_roots(std::vector<std::complex<double>> coeffs);

/// Argument in [0, 2pi).
double principal_argument(std::complex<double> z);

/// Rational roots of a polynomial with rational coefficients (low to high),
/// without multiplicity.
std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs);

}  // namespace germ::numeric
