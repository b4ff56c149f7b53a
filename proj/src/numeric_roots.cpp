#include "germ/numeric_roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace germ::numeric {

namespace {

using cd = std::complex<double>;

// Relative distance below which eigenvalues are treated as one multiple root.
constexpr double kClusterTolerance = 1e-2;

std::vector<cd> derivative(const std::vector<cd>& p) {
    std::vector<cd> d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
    return d;
}

cd horner(const std::vector<cd>& p, cd x) {
    cd acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Refines a cluster center with Newton's method on the (r-1)-th derivative.
Root refine(const std::vector<cd>& p, cd center, unsigned r, double spread) {
    std::vector<cd> q = p;
    for (unsigned k = 1; k < r; ++k) q = derivative(q);
    const std::vector<cd> dq = derivative(q);
    cd x = center;
    double last_step = spread;
    for (int it = 0; it < 50; ++it) {
        const cd f = horner(q, x);
        const cd df = horner(dq, x);
        if (std::abs(df) == 0.0) break;
        const cd step = f / df;
        x -= step;
        last_step = std::abs(step);
        if (last_step <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    if (std::abs(x - center) > std::max(spread, 1e-12) * 10.0 + 1e-9) {
        // Newton wandered off; keep the cluster mean.
        return {center, r, std::max(spread, 1e-12)};
    }
    return {x, r, last_step + 4e-16 * std::max(1.0, std::abs(x))};
}

}  // namespace

double principal_argument(std::complex<double> z) {
    double a = std::arg(z);
    if (a < 0) a += 2.0 * std::numbers::pi;
    if (a >= 2.0 * std::numbers::pi) a = 0.0;
    return a;
}

std::vector<Root> polynomial_roots(std::vector<cd> coeffs) {
    while (!coeffs.empty() && coeffs.back() == cd(0.0)) coeffs.pop_back();
    if (coeffs.empty()) throw std::invalid_argument("roots of the zero polynomial");
    std::vector<Root> out;
    unsigned zeros = 0;
    while (coeffs.front() == cd(0.0)) {
        coeffs.erase(coeffs.begin());
        ++zeros;
    }
    if (zeros > 0) out.push_back({0.0, zeros, 0.0});
    const std::size_t n = coeffs.size() - 1;
    if (n > 0) {
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                            static_cast<Eigen::Index>(n));
        for (std::size_t i = 1; i < n; ++i)
            companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -coeffs[i] / coeffs[n];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue solver failed");
        std::vector<cd> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + n);

        double scale = 1.0;
        for (const cd& z : eig) scale = std::max(scale, std::abs(z));
        const double tol = kClusterTolerance * scale;
        std::vector<int> label(n, -1);
        int clusters = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (label[i] >= 0) continue;
            label[i] = clusters;
            std::vector<std::size_t> stack{i};
            while (!stack.empty()) {
                const std::size_t a = stack.back();
                stack.pop_back();
                for (std::size_t b = 0; b < n; ++b) {
                    if (label[b] < 0 && std::abs(eig[a] - eig[b]) < tol) {
                        label[b] = clusters;
                        stack.push_back(b);
                    }
                }
            }
            ++clusters;
        }
        for (int c = 0; c < clusters; ++c) {
            cd sum = 0.0;
            unsigned r = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (label[i] == c) {
                    sum += eig[i];
                    ++r;
                }
            const cd center = sum / static_cast<double>(r);
            double spread = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                if (label[i] == c) spread = std::max(spread, std::abs(eig[i] - center));
            out.push_back(refine(coeffs, center, r, spread));
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        const double aa = principal_argument(a.value);
        const double ab = principal_argument(b.value);
        if (std::abs(aa - ab) > 1e-9) return aa < ab;
        return std::abs(a.value) < std::abs(b.value);
    });
    return out;
}

namespace {

Rational evaluate(const std::vector<Rational>& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Continued-fraction convergents of x with denominators up to max_den.
std::vector<Rational> convergents(double x, long max_den) {
    std::vector<Rational> out;
    Integer h0 = 1, h1 = 0, k0 = 0, k1 = 1;
    double r = x;
    for (int it = 0; it < 40; ++it) {
        const double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        const Integer ai(static_cast<long>(a));
        const Integer h = ai * h0 + h1;
        const Integer k = ai * k0 + k1;
        if (k > max_den) break;
        out.emplace_back(h, k);
        h1 = h0;
        h0 = h;
        k1 = k0;
        k0 = k;
        const double frac = r - a;
        if (std::abs(frac) < 1e-14) break;
        r = 1.0 / frac;
    }
    return out;
}

}  // namespace

std::vector<Rational> rational_roots(const std::vector<Rational>& coeffs) {
    std::vector<Rational> p = coeffs;
    while (!p.empty() && p.back().is_zero()) p.pop_back();
    if (p.empty()) throw std::invalid_argument("roots of the zero polynomial");
    std::vector<Rational> out;
    if (p.front().is_zero()) out.emplace_back(0);
    while (!p.empty() && p.front().is_zero()) p.erase(p.begin());
    if (p.size() <= 1) return out;
    std::vector<cd> numeric;
    for (const auto& c : p) numeric.emplace_back(c.to_double(), 0.0);
    for (const Root& root : polynomial_roots(numeric)) {
        const double mag = std::max(1.0, std::abs(root.value));
        if (std::abs(root.value.imag()) > 1e-6 * mag) continue;
        for (const Rational& cand : convergents(root.value.real(), 1000000000L)) {
            if (evaluate(p, cand).is_zero()) {
                if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
                break;
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace germ::numeric
