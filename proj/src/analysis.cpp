#include "germ/analysis.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "germ/algebra.hpp"
#include "germ/errors.hpp"
#include "germ/parse.hpp"
#include "germ/pipeline.hpp"

namespace germ::analysis {

namespace {

using poly::MPoly;
using poly::Var;
using puiseux::PuiseuxBranch;

constexpr double kShrinkTolerance = 1e-2;
constexpr double kCnTolerance = 1e-12;
constexpr int kMaxCoordinateShift = 4;
constexpr int kMaxOrderRetries = 8;

// Everything that depends on the choice of coordinates.
struct Prepared {
    std::optional<MPoly> discriminant;
    std::vector<PuiseuxBranch> disc_branches;
    std::vector<carousel::CarouselSpec> carousels;
    std::vector<std::vector<PuiseuxBranch>> locus_branches;
    std::vector<MPoly> locus_polys;
    std::optional<MPoly> s;
};

Rational max_truncation(const Prepared& p, const Rational& floor) {
    Rational m = floor;
    for (const auto& b : p.disc_branches) m = std::max(m, b.truncation_order);
    for (const auto& bs : p.locus_branches)
        for (const auto& b : bs) m = std::max(m, b.truncation_order);
    return m;
}

// Largest finite contact of a tube branch with the discriminant roots and its own conjugates.
std::optional<Rational> tube_contact(const PuiseuxBranch& branch, const std::vector<carousel::CarouselSpec>& carousels) {
    std::optional<Rational> best;
    const auto consider = [&best](const ExtendedRational& e) {
        if (e.is_finite() && (!best || e.value() > *best)) best = e.value();
    };
    for (const auto& c : carousels)
        for (const auto& r : c.roots) consider(puiseux::branch_distance_exponent(branch, r.series));
    for (long k = 1; k < branch.conjugates; ++k)
        consider(puiseux::branch_distance_exponent(branch, puiseux::conjugate(branch, k)));
    return best;
}

// Expansions and carousels in the current coordinates; raises the truncation
// order while contacts between roots are not yet resolved.
void expand_all(Prepared& p, const AnalysisConfig& config) {
    puiseux::ExpandOptions options;
    options.order = config.order;
    for (int attempt = 0;; ++attempt) {
        try {
            p.disc_branches.clear();
            p.carousels.clear();
            p.locus_branches.clear();
            if (p.discriminant) {
                p.disc_branches = puiseux::puiseux_expand(*p.discriminant, options);
                for (const auto& b : p.disc_branches) puiseux::characteristic_data(b);
                p.carousels = carousel::build_carousels(p.disc_branches, config.carousel);
            }
            for (const auto& q : p.locus_polys) {
                p.locus_branches.push_back(puiseux::puiseux_expand(q, options));
                for (const auto& b : p.locus_branches.back()) {
                    puiseux::characteristic_data(b);
                    tube_contact(b, p.carousels);
                }
            }
            return;
        } catch (const std::domain_error& e) {
            if (attempt == kMaxOrderRetries) throw NumericError(std::string("contact orders unresolved: ") + e.what());
            options.order = max_truncation(p, options.order.value_or(Rational(1))) + Rational(1);
            spdlog::debug("raising truncation order to {}", options.order->str());
        }
    }
}

Prepared prepare(const std::optional<MPoly>& disc, const std::vector<MPoly>& locus, const std::optional<MPoly>& s,
                 const AnalysisConfig& config, std::string& change) {
    std::optional<CapabilityError> last;
    for (int k = 0; k <= kMaxCoordinateShift; ++k) {
        const MPoly shift = MPoly::variable(Var::Z1) + MPoly::variable(Var::Z2) * Rational(k);
        const auto apply = [&](const MPoly& f) { return k == 0 ? f : f.substitute(Var::Z1, shift); };
        Prepared p;
        if (disc) p.discriminant = apply(*disc).primitive_integer();
        for (const auto& q : locus) p.locus_polys.push_back(apply(q).primitive_integer());
        if (s) p.s = apply(*s);
        try {
            expand_all(p, config);
            change = k == 0 ? "" : "z1 -> z1 + " + std::to_string(k) + "*z2";
            return p;
        } catch (const CapabilityError& e) {
            spdlog::debug("coordinates with shift {} rejected: {}", k, e.what());
            last = e;
        }
    }
    throw *last;
}

std::vector<std::array<double, 3>> cn_samples(const AnalysisConfig& config) {
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<std::array<double, 3>> out;
    out.reserve(static_cast<std::size_t>(config.cn_samples));
    for (int i = 0; i < config.cn_samples; ++i) {
        const double t = 1e-3 + (1.0 - 1e-3) * u(rng);
        const double r = 1.0 + u(rng);
        const double psi = 2.0 * std::numbers::pi * u(rng);
        out.push_back({t, r, psi});
    }
    return out;
}

Verification check(std::string name, double value, double expected, double tolerance) {
    return {std::move(name), value, expected, tolerance, std::abs(value - expected) <= tolerance};
}

std::vector<Verification> verify(const decomposition::DecompositionGraph& g, const AnalysisConfig& config) {
    std::vector<Verification> out;
    const auto samples = cn_samples(config);
    for (std::size_t i = 0; i < g.pieces.size(); ++i) {
        const auto& p = g.pieces[i];
        const std::string tag = "piece " + std::to_string(i) + " " + decomposition::to_string(p.kind);
        const auto fit =
            metrics::fit_shrink_exponent(p.chart, metrics::standard_loop(p.chart), config.t_sweep, config.quadrature_steps);
        out.push_back(check("shrink exponent " + tag, fit.exponent, p.rate().to_double(), kShrinkTolerance));
        if (p.kind == decomposition::PieceKind::ThickenedTorusCone) {
            const auto cn = metrics::verify_cn_identity(p.nu, *p.nu_prime, samples);
            out.push_back(check("cheeger-nagase identity " + tag, cn.max_deviation, 0.0, kCnTolerance));
        }
    }
    return out;
}

PieceReport describe(const decomposition::Piece& p) {
    PieceReport r;
    r.kind = decomposition::to_string(p.kind);
    r.nu = p.nu;
    r.nu_prime = p.nu_prime;
    r.transversal = p.transversal;
    r.provenance = p.provenance;
    r.chart = to_string(metrics::kind(p.chart));
    r.conical = p.conical();
    return r;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (cn_samples < 1) throw std::invalid_argument("sample count must be positive");
    if (quadrature_steps < 1) throw std::invalid_argument("quadrature steps must be positive");
    if (order && order->sign() <= 0) throw std::invalid_argument("truncation order must be positive");
    for (const double t : t_sweep)
        if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("t values must lie in (0, 1]");
}

bool AnalysisReport::verified() const {
    return std::all_of(verifications.begin(), verifications.end(), [](const Verification& v) { return v.passed; });
}

std::vector<BranchReport> describe_branches(const std::vector<PuiseuxBranch>& branches) {
    std::vector<BranchReport> out;
    for (const auto& b : branches) {
        const auto ch = puiseux::characteristic_data(b);
        BranchReport r;
        r.series = b.str();
        r.exponents = ch.exponents;
        r.pairs = ch.pairs;
        r.ramification = b.ramification;
        r.conjugates = b.conjugates;
        r.truncation_order = b.truncation_order;
        const bool linear = !b.terms.empty() && b.terms.front().exponent == Rational(1);
        r.tangent = linear ? b.terms.front().coefficient.str() : "0";
        out.push_back(std::move(r));
    }
    return out;
}

AnalysisReport analyze(const std::string& text, const AnalysisConfig& config) {
    config.validate();
    const MPoly f = poly::parse_poly(text);
    const auto germ = pipeline::classify_input(f);
    if (germ.form != pipeline::InputForm::VerticalClass)
        throw CapabilityError("input is not of the form z3^d - g(z1, z2) with d >= 2");

    AnalysisReport report;
    report.input = text;
    report.form = "VerticalClass";
    report.d = germ.d;
    report.g = germ.g.str();
    spdlog::debug("analyzing {} (d = {})", f.str(), germ.d);

    const auto locus = pipeline::singular_locus(germ);
    report.locus_rule = locus.rule;
    for (std::size_t i = 0; i < locus.curve_branches.size(); ++i) {
        const auto& b = locus.curve_branches[i];
        report.locus.push_back({b.poly.str(), static_cast<int>(b.multiplicity), locus.embedded_equations(i)});
    }
    if (locus.isolated_candidates)
        for (const auto& pt : *locus.isolated_candidates) report.isolated_candidates.emplace_back(pt[0], pt[1]);

    std::optional<MPoly> s;
    MPoly f_bar = f;
    if (germ.d == 2) {
        const auto n = pipeline::normalize_double_cover(germ);
        report.normalization = NormalizationReport{n.f_bar.str(), n.s.str(), n.q.str(), n.smooth, n.substitution};
        report.smooth = n.smooth;
        s = n.s;
        f_bar = n.f_bar;
    } else {
        if (!locus.curve_branches.empty())
            throw CapabilityError("normalization of a non-reduced g is only available for d = 2");
        report.smooth = pipeline::smooth_at_origin(germ.g);
    }

    std::optional<MPoly> disc;
    if (!report.smooth) {
        disc = pipeline::discriminant_curve(f_bar);
        report.discriminant = disc->str();
    }
    std::vector<MPoly> locus_polys;
    for (const auto& b : locus.curve_branches) locus_polys.push_back(b.poly);

    const Prepared p = prepare(disc, locus_polys, s, config, report.coordinate_change);
    if (p.discriminant) report.discriminant = p.discriminant->str();
    report.discriminant_branches = describe_branches(p.disc_branches);
    for (std::size_t c = 0; c < p.carousels.size(); ++c)
        for (const auto& a : p.carousels[c].approximants)
            for (std::size_t i = 0; i < p.disc_branches.size(); ++i)
                if (p.disc_branches[i] == a) report.discriminant_branches[i].carousel = static_cast<int>(c);

    decomposition::AssemblyInput input;
    input.carousels = p.carousels;
    for (std::size_t c = 0; c < p.carousels.size(); ++c) {
        const auto& spec = p.carousels[c];
        for (const auto& region : spec.regions) {
            const auto m = carousel::region_metric_type(region);
            report.regions.push_back({static_cast<int>(c), region.name, carousel::to_string(region.kind), region.level,
                                      region.nu, region.nu_outer, to_string(m.kind), m.nu_prime, m.conical});
        }
    }

    for (std::size_t i = 0; i < p.locus_polys.size(); ++i) {
        const int axis = pipeline::axis_multiplicity(p.locus_polys[i], Var::Z1);
        const auto described = describe_branches(p.locus_branches[i]);
        for (std::size_t j = 0; j < p.locus_branches[i].size(); ++j) {
            const auto& branch = p.locus_branches[i][j];
            TubeReport t;
            t.id = std::to_string(i) + "." + std::to_string(j);
            t.locus_branch = static_cast<int>(i);
            t.puiseux = described[j];
            t.axis_multiplicity = axis;
            t.transversal = pipeline::transversal_data(germ.d, static_cast<int>(locus.curve_branches[i].multiplicity));
            for (std::size_t c = 0; c < p.carousels.size(); ++c) {
                const auto loc = carousel::locate_branch(p.carousels[c], branch);
                if (!loc.inside) continue;
                t.carousel = static_cast<int>(c);
                t.host_orbit = loc.orbit;
                break;
            }
            t.host_rate = decomposition::host_rate(input, t.carousel, t.host_orbit);
            const auto contact = tube_contact(branch, p.carousels);
            t.nu_prime = contact && *contact > t.host_rate ? *contact : t.host_rate + Rational(1);

            // The square root of s along the branch parameter splits the circle
            // over the branch when s has even order there.
            const auto v = puiseux::substitution_valuation(*p.s, branch);
            const bool split = v.is_finite() && (v.value() * Rational(branch.conjugates)).is_integer() &&
                               (v.value() * Rational(branch.conjugates)).to_long() % 2 == 0;
            const bool vanishes = !v.is_finite();
            t.circles = split ? 2 : 1;
            t.circle_degree = static_cast<int>(branch.conjugates) * (split || vanishes ? 1 : 2);
            report.tubes.push_back(t);

            decomposition::TubeInput tube;
            tube.branch_id = t.id;
            tube.transversal = t.transversal;
            tube.carousel = t.carousel;
            tube.host_orbit = t.host_orbit;
            tube.nu_prime = t.nu_prime;
            tube.circles = t.circles;
            tube.circle_degree = t.circle_degree;
            input.tubes.push_back(std::move(tube));
        }
    }

    const auto graph = decomposition::assemble(input);
    const auto problem = decomposition::check_invariants(graph);
    if (!problem.empty()) throw std::logic_error("assembled graph violates an invariant: " + problem);
    for (const auto& piece : graph.pieces) report.pieces.push_back(describe(piece));
    for (const auto& e : graph.edges) report.edges.push_back({e.a, e.b, e.gluing});
    for (const auto& c : graph.circles) report.circles.push_back({c.branch, c.sheet, c.degree, c.host_piece});
    const auto sum = decomposition::summary(graph);
    for (const auto& [kind, count] : sum.counts) report.summary.counts[decomposition::to_string(kind)] = count;
    report.summary.conical_count = sum.conical_count;
    report.summary.non_conical_rate = sum.non_conical_rate;
    report.verifications = verify(graph, config);
    spdlog::debug("{} pieces, {} verifications", report.pieces.size(), report.verifications.size());
    return report;
}

decomposition::DecompositionGraph graph_from_report(const AnalysisReport& report) {
    using decomposition::PieceKind;
    decomposition::DecompositionGraph g;
    for (const auto& r : report.pieces) {
        decomposition::Piece p;
        p.kind = decomposition::piece_kind_from_string(r.kind);
        p.nu = r.nu;
        p.nu_prime = r.nu_prime;
        p.transversal = r.transversal;
        p.provenance = r.provenance;
        switch (p.kind) {
            case PieceKind::SeifertCone: p.chart = metrics::cone(); break;
            case PieceKind::ThickenedTorusCone:
                if (!p.nu_prime) throw std::invalid_argument("thickened torus without nu'");
                p.chart = metrics::cheeger_nagase(p.nu, *p.nu_prime);
                break;
            case PieceKind::MappingTorusCone: p.chart = metrics::mapping_torus_cone(p.nu); break;
            case PieceKind::TubularCone: p.chart = metrics::hsiang_pati(p.nu); break;
        }
        g.pieces.push_back(std::move(p));
    }
    g.boundary_order.resize(g.pieces.size());
    for (const auto& e : report.edges) {
        if (e.a < 0 || e.b < 0 || static_cast<std::size_t>(std::max(e.a, e.b)) >= g.pieces.size())
            throw std::invalid_argument("edge refers to a missing piece");
        g.edges.push_back({e.a, e.b, e.gluing});
        g.boundary_order[static_cast<std::size_t>(e.a)].push_back(e.b);
        g.boundary_order[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    for (const auto& c : report.circles) g.circles.push_back({c.branch, c.sheet, c.degree, c.host_piece});
    return g;
}

}  // namespace germ::analysis
