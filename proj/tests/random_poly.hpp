#pragma once

#include <random>

#include "germ/mpoly.hpp"

namespace germ::testing {

/// Random polynomial with up to `terms` monomials, each variable degree <= max_deg
/// and integer coefficients in [-5, 5].
inline poly::MPoly random_poly(std::mt19937_64& rng, int max_deg, int terms, bool use_z3 = true) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> coeff(-5, 5);
    poly::MPoly p;
    for (int i = 0; i < terms; ++i) {
        poly::Exponents e{static_cast<unsigned>(deg(rng)), static_cast<unsigned>(deg(rng)),
                          use_z3 ? static_cast<unsigned>(deg(rng)) : 0U};
        if (e[0] + e[1] + e[2] > static_cast<unsigned>(max_deg)) continue;
        p.add_term(e, Rational(coeff(rng)));
    }
    return p;
}

/// Same, but never zero.
inline poly::MPoly random_nonzero_poly(std::mt19937_64& rng, int max_deg, int terms, bool use_z3 = true) {
    for (;;) {
        auto p = random_poly(rng, max_deg, terms, use_z3);
        if (!p.is_zero()) return p;
    }
}

}  // namespace germ::testing
