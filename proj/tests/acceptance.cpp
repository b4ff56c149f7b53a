// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "germ/algebra.hpp"
#include "germ/analysis.hpp"
#include "germ/parse.hpp"
#include "oracles.hpp"
#include "random_poly.hpp"

namespace {

using germ::ExtendedRational;
using germ::Rational;
using germ::poly::MPoly;
using germ::poly::parse_poly;
using germ::poly::Var;
namespace m = germ::metrics;

// Pinned tolerances.
constexpr double kWorkedExampleSeconds = 5.0;
constexpr double kShrinkTolerance = 1e-2;
constexpr double kMetricSeconds = 10.0;
constexpr double kCnTolerance = 1e-12;
constexpr double kAnnulusTolerance = 1e-10;
constexpr int kOracleProducts = 50;
constexpr int kAlgebraInstances = 100;
constexpr int kCarouselPoints = 10000;

Rational q(long n, long d = 1) { return Rational(germ::Integer(n), germ::Integer(d)); }

struct Outcome {
    bool passed = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

Outcome worked_example() {
    const auto start = std::chrono::steady_clock::now();
    const auto r = germ::analysis::analyze("z3^2 - (z1^3 - z2^2)^2*(z1^4 - z2^3)");
    const double elapsed = seconds_since(start);
    std::vector<std::string> bad;
    if (r.locus.size() != 1 || parse_poly(r.locus[0].equation) != parse_poly("z1^3 - z2^2") || r.locus[0].multiplicity != 2)
        bad.push_back("locus");
    if (!r.normalization || parse_poly(r.normalization->f_bar) != parse_poly("z3^2 - (z1^4 - z2^3)"))
        bad.push_back("normalization");
    if (r.discriminant_branches.size() != 1 || r.discriminant_branches[0].exponents != std::vector<Rational>{q(4, 3)})
        bad.push_back("exponent");
    if (r.tubes.size() != 1 || r.tubes[0].axis_multiplicity != 2) bad.push_back("axis multiplicity");
    const std::set<std::string> kinds{"SeifertCone", "ThickenedTorusCone", "MappingTorusCone", "TubularCone"};
    std::set<std::string> seen;
    for (const auto& p : r.pieces) seen.insert(p.kind);
    if (seen != kinds) bad.push_back("piece kinds");
    if (r.summary.conical_count != 1) bad.push_back("conical count");
    if (!r.summary.non_conical_rate || *r.summary.non_conical_rate != q(4, 3)) bad.push_back("rate");
    if (!r.verified()) bad.push_back("metric checks");
    if (elapsed >= kWorkedExampleSeconds) bad.push_back("runtime");
    char buf[160];
    std::snprintf(buf, sizeof buf, "exponent 4/3, %zu pieces, rate %s, %.2f s (limit %.0f s)", r.pieces.size(),
                  r.summary.non_conical_rate ? r.summary.non_conical_rate->str().c_str() : "none", elapsed,
                  kWorkedExampleSeconds);
    std::string detail = buf;
    for (const auto& b : bad) detail += "; wrong " + b;
    return {bad.empty(), detail};
}

// Pairs (m_j, n_j) with r_j = m_j / (n_1 ... n_j), from the exponents alone.
std::vector<std::pair<long, long>> expected_pairs(const std::vector<Rational>& exps) {
    std::vector<std::pair<long, long>> out;
    long prev = 1;
    for (const auto& r : exps) {
        const long den = std::lcm(prev, Rational(r.denominator()).to_long());
        out.emplace_back((r * Rational(den)).to_long(), den / prev);
        prev = den;
    }
    return out;
}

Outcome puiseux_oracles() {
    std::mt19937_64 rng(9001);
    int checked = 0;
    int failures = 0;
    for (int trial = 0; checked < kOracleProducts && trial < 1000; ++trial) {
        const int count = 1 + static_cast<int>(rng() % 2);
        std::vector<germ::testing::ParamBranch> parts;
        MPoly g(1);
        for (int k = 0; k < count; ++k) {
            parts.push_back(germ::testing::random_param_branch(rng));
            g *= germ::testing::branch_norm(parts.back());
        }
        if (!germ::poly::squarefree_in(g, Var::Z2)) continue;
        ++checked;
        std::vector<std::pair<std::vector<Rational>, std::vector<std::pair<long, long>>>> expected, got;
        for (const auto& p : parts) expected.emplace_back(p.characteristic, expected_pairs(p.characteristic));
        bool ok = true;
        for (const auto& b : germ::puiseux::puiseux_expand(g)) {
            const auto ch = germ::puiseux::characteristic_data(b);
            got.emplace_back(ch.exponents, ch.pairs);
            const auto v = germ::puiseux::substitution_valuation(g, b);
            ok = ok && v == b.residual_valuation;
            if (!b.complete()) ok = ok && b.residual_valuation > ExtendedRational(b.truncation_order);
        }
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        if (!ok || got != expected) ++failures;
    }
    return {checked >= kOracleProducts && failures == 0,
            std::to_string(checked) + " products, " + std::to_string(failures) + " mismatches"};
}

Outcome metric_scaling() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<double> ts{1e-1, 1e-2, 1e-3};
    double worst = 0.0;
    bool flags = true;
    for (const Rational& nu : {q(1), q(4, 3), q(3, 2), q(2)}) {
        for (const auto& chart : {m::hsiang_pati(nu), m::mapping_torus_cone(nu, m::BaseMetric::flat_square(),
                                                                            m::Monodromy::rotation_quarter())}) {
            const auto fit = m::fit_shrink_exponent(chart, m::standard_loop(chart), ts);
            worst = std::max(worst, std::abs(fit.exponent - nu.to_double()));
            const bool conical = m::shrink_rate(chart) == Rational(1);
            flags = flags && conical == (nu == Rational(1));
        }
    }
    const double elapsed = seconds_since(start);
    char buf[160];
    std::snprintf(buf, sizeof buf, "max |fit - nu| %.2e (tolerance %.0e), nu = 1 conical: %s, %.2f s", worst,
                  kShrinkTolerance, flags ? "yes" : "no", elapsed);
    return {worst <= kShrinkTolerance && flags && elapsed < kMetricSeconds, buf};
}

Outcome cn_identity() {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::array<double, 3>> samples;
    for (int i = 0; i < 1000; ++i) samples.push_back({1e-3 + (1.0 - 1e-3) * u(rng), 1.0 + u(rng), 2.0 * std::numbers::pi * u(rng)});
    double worst_cn = 0.0;
    double worst_width = 0.0;
    std::size_t evaluated = 0;
    for (const auto& [nu, nup] : {std::pair{q(1), q(4, 3)}, std::pair{q(1), q(2)}, std::pair{q(4, 3), q(3, 2)}}) {
        const auto check = m::verify_cn_identity(nu, nup, samples);
        worst_cn = std::max(worst_cn, check.max_deviation);
        evaluated += check.evaluated;
        const auto chart = m::annulus_family(nu, nup);
        for (const double t : {0.9, 0.5, 0.1, 1e-2, 1e-3}) {
            Eigen::VectorXd a(4), b(4);
            a << t, 1.0, 1.0, 0.5;
            b << t, 1.0, 2.0, 0.5;
            const double width = m::curve_length(chart, m::ParamCurve::segment(a, b), 8);
            worst_width = std::max(worst_width, std::abs(width - std::abs(std::pow(t, nu.to_double()) - std::pow(t, nup.to_double()))));
        }
    }
    char buf[200];
    std::snprintf(buf, sizeof buf, "max deviation %.2e over %zu samples (tolerance %.0e), annulus width error %.2e (tolerance %.0e)",
                  worst_cn, evaluated, kCnTolerance, worst_width, kAnnulusTolerance);
    return {worst_cn <= kCnTolerance && evaluated == 3000 && worst_width <= kAnnulusTolerance, buf};
}

Outcome hirzebruch_jung() {
    long checked = 0;
    long failures = 0;
    for (long n = 2; n <= 200; ++n)
        for (long k = 1; k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            ++checked;
            const auto f = germ::decomposition::hj_continued_fraction(n, k);
            const bool entries_ok = std::all_of(f.entries.begin(), f.entries.end(), [](long a) { return a >= 2; });
            if (!entries_ok || germ::decomposition::evaluate_hj(f.entries) != q(n, k)) ++failures;
        }
    return {failures == 0, std::to_string(checked) + " pairs, " + std::to_string(failures) + " failures"};
}

MPoly random_in_z3(std::mt19937_64& rng) {
    for (;;) {
        MPoly p = germ::testing::random_poly(rng, 2, 4);
        if (p.depends_on(Var::Z3)) return p;
    }
}

Outcome algebra_properties() {
    std::mt19937_64 rng(777);
    std::map<std::string, int> failures{{"resultant", 0}, {"squarefree", 0}, {"gcd", 0}, {"parser", 0}};
    for (int i = 0; i < kAlgebraInstances; ++i) {
        const MPoly a = random_in_z3(rng), b = random_in_z3(rng), c = random_in_z3(rng);
        if (germ::poly::resultant(a * b, c, Var::Z3) !=
            germ::poly::resultant(a, c, Var::Z3) * germ::poly::resultant(b, c, Var::Z3))
            ++failures["resultant"];

        const MPoly u = germ::testing::random_nonzero_poly(rng, 2, 3, false);
        const MPoly v = germ::testing::random_nonzero_poly(rng, 2, 3, false);
        const MPoly p = u * v.pow(2) * Rational(i % 5 + 1, 3);
        if (germ::poly::squarefree_decompose(p, Var::Z2).expand() != p) ++failures["squarefree"];

        const MPoly g = germ::testing::random_nonzero_poly(rng, 2, 3);
        const MPoly x = g * germ::testing::random_nonzero_poly(rng, 2, 3);
        const MPoly y = g * germ::testing::random_nonzero_poly(rng, 2, 3);
        const MPoly d = germ::poly::gcd(x, y);
        if (!germ::poly::exact_divide(x, d) || !germ::poly::exact_divide(y, d) || !germ::poly::exact_divide(d, g))
            ++failures["gcd"];

        MPoly r = germ::testing::random_poly(rng, 5, 6);
        r *= Rational(1 + i % 3, 1 + i % 4);
        if (parse_poly(r.str()) != r) ++failures["parser"];
    }
    std::string detail = std::to_string(kAlgebraInstances) + " instances each, failures:";
    int total = 0;
    for (const auto& [name, n] : failures) {
        detail += " " + name + " " + std::to_string(n);
        total += n;
    }
    return {total == 0, detail};
}

Outcome carousel_partition() {
    std::vector<germ::carousel::CarouselSpec> specs;
    for (const char* g : {"z2^3 - z1^4", "(z2^2 - z1^3)*(z2^2 - 4*z1^3)", "(z2^2 - z1^3)*(z2 - z1^2)"})
        specs.push_back(germ::carousel::build_carousel(germ::puiseux::puiseux_expand(parse_poly(g))));
    germ::testing::ParamBranch chain;
    chain.n = 4;
    chain.terms = {{6, q(1)}, {7, q(1)}};
    specs.push_back(germ::carousel::build_carousel(germ::puiseux::puiseux_expand(germ::testing::branch_norm(chain))));
    int bad = 0;
    int unstable = 0;
    for (const auto& s : specs)
        for (int i = 0; i < kCarouselPoints; ++i) {
            const auto [x, y] = germ::testing::sample_a(s, i);
            const auto members = germ::testing::region_memberships(s, x, y);
            const auto first = germ::carousel::classify_point(s, x, y);
            if (members.size() != 1 || members.front() != first.name) ++bad;
            if (germ::carousel::classify_point(s, x, y).name != first.name) ++unstable;
        }
    return {bad == 0 && unstable == 0, std::to_string(specs.size()) + " carousels x " + std::to_string(kCarouselPoints) +
                                           " points, " + std::to_string(bad) + " not in exactly one region, " +
                                           std::to_string(unstable) + " unstable"};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 worked example reproduction", worked_example},
        {"2 Puiseux oracle suite", puiseux_oracles},
        {"3 metric scaling", metric_scaling},
        {"4 Cheeger-Nagase identity and annulus width", cn_identity},
        {"5 Hirzebruch-Jung round trip", hirzebruch_jung},
        {"6 algebra properties", algebra_properties},
        {"7 carousel partition", carousel_partition},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.passed ? 0 : 1;
        std::printf("%s  %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    return failed == 0 ? 0 : 1;
}
