#include <stdexcept>

#include "germ/algebra.hpp"

namespace germ::poly {

namespace {

// Fraction-free Gaussian elimination (Bareiss) over the polynomial ring.
MPoly bareiss_determinant(std::vector<std::vector<MPoly>> m, const VarNames& names) {
    const std::size_t n = m.size();
    if (n == 0) return MPoly::monomial({0, 0, 0}, Rational(1), names);
    bool negate = false;
    MPoly prev = MPoly::monomial({0, 0, 0}, Rational(1), names);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].is_zero()) ++r;
            if (r == n) return MPoly(names);
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = exact_divide(num, prev);
                if (!q) throw std::logic_error("Bareiss step is not exact");
                m[i][j] = std::move(*q);
            }
            m[i][k] = MPoly(names);
        }
        prev = m[k][k];
    }
    MPoly det = m[n - 1][n - 1];
    return negate ? -det : det;
}

}  // namespace

MPoly resultant(const MPoly& a, const MPoly& b, Var v) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("resultant of two zero polynomials");
    const VarNames& names = a.is_zero() ? b.names() : a.names();
    if (a.is_zero() || b.is_zero()) return MPoly(names);
    const int m = a.degree(v);
    const int n = b.degree(v);
    if (m == 0) return a.pow(static_cast<unsigned>(n));
    if (n == 0) return b.pow(static_cast<unsigned>(m));

    const auto ca = a.coefficients_in(v);
    const auto cb = b.coefficients_in(v);
    const std::size_t size = static_cast<std::size_t>(m + n);
    std::vector<std::vector<MPoly>> s(size, std::vector<MPoly>(size, MPoly(names)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[r][r + k] = ca[static_cast<std::size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) s[n + r][r + k] = cb[static_cast<std::size_t>(n - k)];
    return bareiss_determinant(std::move(s), names);
}

}  // namespace germ::poly
