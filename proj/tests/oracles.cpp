#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace germ::testing {

using poly::MPoly;
using cd = std::complex<double>;

poly::MPoly branch_norm(const ParamBranch& b) {
    const long n = b.n;
    long top = 0;
    for (const auto& [l, c] : b.terms) top = std::max(top, l);
    std::vector<Rational> y(static_cast<std::size_t>(top) + 1, Rational(0));
    for (const auto& [l, c] : b.terms) y[static_cast<std::size_t>(l)] += c;

    // Power sums p_m = sum over the n conjugates of y^m: only t-exponents divisible by n survive.
    std::vector<MPoly> p(static_cast<std::size_t>(n) + 1);
    std::vector<Rational> ym{Rational(1)};
    for (long m = 1; m <= n; ++m) {
        std::vector<Rational> next(ym.size() + y.size() - 1, Rational(0));
        for (std::size_t i = 0; i < ym.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) next[i + j] += ym[i] * y[j];
        ym = std::move(next);
        MPoly pm;
        for (std::size_t l = 0; l < ym.size(); ++l)
            if (static_cast<long>(l) % n == 0 && !ym[l].is_zero())
                pm.add_term({static_cast<unsigned>(static_cast<long>(l) / n), 0, 0}, ym[l] * Rational(n));
        p[static_cast<std::size_t>(m)] = pm;
    }
    // Newton: m e_m = sum_{i=1}^m (-1)^{i-1} e_{m-i} p_i.
    std::vector<MPoly> e(static_cast<std::size_t>(n) + 1);
    e[0] = MPoly(1);
    for (long m = 1; m <= n; ++m) {
        MPoly acc;
        for (long i = 1; i <= m; ++i) {
            MPoly t = e[static_cast<std::size_t>(m - i)] * p[static_cast<std::size_t>(i)];
            if (i % 2 == 0) t = -t;
            acc += t;
        }
        e[static_cast<std::size_t>(m)] = acc * Rational(Integer(1), Integer(m));
    }
    MPoly out;
    for (long m = 0; m <= n; ++m) {
        MPoly t = e[static_cast<std::size_t>(m)] * MPoly::monomial({0, static_cast<unsigned>(n - m), 0}, Rational(1));
        if (m % 2 == 1) t = -t;
        out += t;
    }
    return out;
}

ParamBranch random_param_branch(std::mt19937_64& rng) {
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    auto coeff = [&]() {
        long c = 0;
        while (c == 0) c = pick(-3, 3);
        return Rational(c);
    };
    ParamBranch b;
    const long pairs = pick(0, 9) < 4 ? 2 : 1;
    long n1 = 0, n2 = 1;
    if (pairs == 2) {
        n1 = pick(2, 3);
        n2 = n1 == 2 ? pick(2, 3) : 2;
    } else {
        n1 = pick(2, 6);
    }
    b.n = n1 * n2;
    // r1 = m1 / n1 in (1, 3).
    long m1 = 0;
    do m1 = pick(n1 + 1, 3 * n1 - 1); while (std::gcd(m1, n1) != 1);
    if (pick(0, 2) == 0) b.terms.emplace_back(b.n, coeff());  // integral tangent term x^1
    const long l1 = m1 * n2;
    b.terms.emplace_back(l1, coeff());
    b.characteristic.push_back(Rational(Integer(m1), Integer(n1)));
    long last = l1;
    if (pairs == 2) {
        // Possibly a non-characteristic term with denominator n1 in between.
        if (pick(0, 1) == 0) {
            last += n2 * pick(1, 2);
            b.terms.emplace_back(last, coeff());
        }
        long l2 = 0;
        do l2 = last + pick(1, 2 * b.n); while (std::gcd(l2, b.n) % n2 == 0 || l2 % n2 == 0);
        b.terms.emplace_back(l2, coeff());
        b.characteristic.push_back(Rational(Integer(l2), Integer(b.n)));
        last = l2;
    }
    if (pick(0, 2) == 0) b.terms.emplace_back(last + pick(1, b.n), coeff());
    return b;
}

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

std::pair<cd, cd> sample_a(const carousel::CarouselSpec& s, int i) {
    const double tau = 2.0 * std::numbers::pi;
    const cd x = std::polar(s.epsilon * std::sqrt(halton(i + 1, 2)), tau * halton(i + 1, 3));
    const cd y = s.tangent * x + std::polar(s.mu * std::abs(x) * std::sqrt(halton(i + 1, 5)), tau * halton(i + 1, 7));
    return {x, y};
}

std::vector<std::string> region_memberships(const carousel::CarouselSpec& s, cd x, cd y) {
    std::vector<std::string> out;
    const double r = std::abs(x);
    if (r > s.epsilon || std::abs(y - s.tangent * x) > s.mu * r) return {"OuterA"};
    auto in_hole = [&](int parent, int child) {
        const auto& p = s.nodes[static_cast<std::size_t>(parent)];
        const double rad = p.constants.gamma * std::pow(r, p.exponent.to_double());
        return std::abs(y - s.nodes[static_cast<std::size_t>(child)].approximant.evaluate(x)) < rad * (1.0 - 1e-9);
    };
    auto first_hole = [&](int parent) {
        for (const int c : s.nodes[static_cast<std::size_t>(parent)].children)
            if (in_hole(parent, c)) return c;
        return -1;
    };
    for (std::size_t v = 0; v < s.nodes.size(); ++v) {
        bool reached = true;
        for (int c = static_cast<int>(v); s.nodes[static_cast<std::size_t>(c)].parent >= 0;
             c = s.nodes[static_cast<std::size_t>(c)].parent)
            reached = reached && first_hole(s.nodes[static_cast<std::size_t>(c)].parent) == c;
        if (!reached) continue;
        const auto& n = s.nodes[v];
        const auto o = static_cast<std::size_t>(n.orbit);
        if (n.leaf) {
            out.push_back(s.regions[static_cast<std::size_t>(s.orbit_regions_lambda[o])].name);
            continue;
        }
        if (first_hole(static_cast<int>(v)) >= 0) continue;
        const double band = std::pow(r, n.exponent.to_double());
        const double d = std::abs(y - n.approximant.evaluate(x));
        if (d > n.constants.beta * band) out.push_back(s.regions[static_cast<std::size_t>(s.orbit_regions_omega[o])].name);
        if (d >= n.constants.alpha * band && d <= n.constants.beta * band)
            out.push_back(s.regions[static_cast<std::size_t>(s.orbit_regions_upsilon[o])].name);
        if (d < n.constants.alpha * band) out.push_back(s.regions[static_cast<std::size_t>(s.orbit_regions_lambda[o])].name);
    }
    return out;
}

}  // namespace germ::testing
