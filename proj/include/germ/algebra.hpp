#pragma once

#include <utility>
#include <vector>

#include "germ/mpoly.hpp"

namespace germ::poly {

/// Sylvester-matrix resultant eliminating v; Bareiss fraction-free determinant.
/// When one argument has degree 0 in v the resultant is that argument to the
/// power of the other's degree. Throws std::invalid_argument if both are zero.
MPoly resultant(const MPoly& a, const MPoly& b, Var v);

/// Pseudo-remainder of a by b as polynomials in v.
MPoly pseudo_remainder(const MPoly& a, const MPoly& b, Var v);

/// gcd over Q[z1,z2,z3], normalized so the grlex-leading coefficient is 1.
/// gcd(0, 0) = 0.
MPoly gcd(const MPoly& a, const MPoly& b);

/// gcd restricted to polynomials in z1, z2.
MPoly bivariate_gcd(const MPoly& a, const MPoly& b);

/// gcd of the coefficients of p viewed as a polynomial in v.
MPoly content_in(const MPoly& p, Var v);

struct SquarefreeFactor {
    MPoly factor;
    unsigned multiplicity = 0;
    friend bool operator==(const SquarefreeFactor&, const SquarefreeFactor&) = default;
};

struct SquarefreeDecomposition {
    std::vector<SquarefreeFactor> factors;
    Rational unit;

    /// unit * prod factor^multiplicity.
    MPoly expand() const;
};

/// Yun decomposition in main_var; the content in main_var is decomposed
/// recursively. Factors are normalized like gcd outputs and sorted by
/// multiplicity, then by rendering.
SquarefreeDecomposition squarefree_decompose(const MPoly& p, Var main_var);

/// Product of the distinct factors (the reduced polynomial), normalized.
MPoly squarefree_part(const MPoly& p, Var main_var);

/// True when p has no repeated factor involving main_var. Tries integer
/// specializations of the other variables first and falls back to the full gcd.
bool squarefree_in(const MPoly& p, Var main_var);

}  // namespace germ::poly
