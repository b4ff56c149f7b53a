#pragma once

#include <complex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "germ/carousel.hpp"
#include "germ/mpoly.hpp"

namespace germ::testing {

/// y = sum c * x^{l/n} over (l, c); one conjugacy class of n roots.
struct ParamBranch {
    long n = 1;
    std::vector<std::pair<long, Rational>> terms;
    std::vector<Rational> characteristic;  // prescribed characteristic exponents
};

/// prod_k (z2 - y(zeta^k x^{1/n})) computed from power sums and Newton's identities.
poly::MPoly branch_norm(const ParamBranch& b);

/// Random branch with at most two characteristic pairs and denominators <= 6.
ParamBranch random_param_branch(std::mt19937_64& rng);

/// Radical-inverse sequence in the given base, index >= 1.
double halton(int index, int base);

/// Quasi-random point of A: |x| uniform in area, y uniform in the aperture disk.
std::pair<std::complex<double>, std::complex<double>> sample_a(const carousel::CarouselSpec& s, int i);

/// Names of the regions whose inequalities hold at (x, y), evaluated separately
/// for every node: the path from the root must enter the first matching hole at
/// each level, and the final node decides between Omega, Upsilon and Lambda from
/// its own band.
std::vector<std::string> region_memberships(const carousel::CarouselSpec& s, std::complex<double> x,
                                            std::complex<double> y);

}  // namespace germ::testing
