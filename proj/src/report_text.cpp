#include <cstdio>
#include <sstream>

#include "germ/analysis.hpp"

namespace germ::analysis {

namespace {

std::string join(const std::vector<Rational>& rs) {
    std::string out = "[";
    for (std::size_t i = 0; i < rs.size(); ++i) out += (i ? ", " : "") + rs[i].str();
    return out + "]";
}

std::string pairs_str(const std::vector<std::pair<long, long>>& ps) {
    std::string out = "[";
    for (std::size_t i = 0; i < ps.size(); ++i)
        out += (i ? ", " : "") + std::string("(") + std::to_string(ps[i].first) + "," + std::to_string(ps[i].second) + ")";
    return out + "]";
}

}  // namespace

std::string to_text(const AnalysisReport& r) {
    std::ostringstream out;
    out << "input: " << r.input << "\n";
    out << "form: " << r.form << ", d = " << r.d << ", g = " << r.g << "\n\n";

    out << "singular locus\n";
    if (r.locus.empty()) out << "  no curve components\n";
    for (const auto& b : r.locus) out << "  " << b.equation << " (multiplicity " << b.multiplicity << "): " << b.embedded << "\n";
    if (!r.isolated_candidates.empty()) {
        out << "  isolated candidates:";
        for (const auto& [x, y] : r.isolated_candidates) out << " (" << x.str() << ", " << y.str() << ")";
        out << "\n";
    }

    out << "\nnormalization\n";
    if (r.normalization) {
        out << "  " << r.normalization->substitution << "\n";
        out << "  normalized germ: " << r.normalization->f_bar << "\n";
    } else {
        out << "  not computed (d = " << r.d << ")\n";
    }
    out << "  smooth at the origin: " << (r.smooth ? "yes" : "no") << "\n";
    if (!r.coordinate_change.empty()) out << "  coordinates: " << r.coordinate_change << "\n";

    out << "\ndiscriminant\n";
    out << "  " << r.discriminant.value_or("none") << "\n";
    for (std::size_t i = 0; i < r.discriminant_branches.size(); ++i) {
        const auto& b = r.discriminant_branches[i];
        out << "  branch " << i << ": exponents " << join(b.exponents) << ", pairs " << pairs_str(b.pairs)
            << ", conjugates " << b.conjugates << "\n";
        out << "    y = " << b.series << "\n";
    }

    if (!r.tubes.empty()) out << "\nsingular branches\n";
    for (const auto& t : r.tubes) {
        out << "  " << t.id << ": exponents " << join(t.puiseux.exponents) << ", axis multiplicity " << t.axis_multiplicity
            << ", transversal z^" << t.transversal.d << " - w^" << t.transversal.m << " (milnor " << t.transversal.milnor_number
            << ")\n";
        out << "    host rate " << t.host_rate.str() << ", tube rate " << t.nu_prime.str() << ", " << t.circles
            << " circle(s) of degree " << t.circle_degree << "\n";
    }

    out << "\nregions\n";
    if (r.regions.empty()) out << "  none\n";
    for (const auto& g : r.regions) {
        out << "  carousel " << g.carousel << " " << g.name << ": nu = " << g.nu.str();
        if (g.nu_outer) out << " (outer " << g.nu_outer->str() << ")";
        out << ", metric " << g.metric;
        if (g.metric_nu_prime) out << " nu' = " << g.metric_nu_prime->str();
        out << (g.conical ? ", conical" : "") << "\n";
    }

    out << "\npieces\n";
    for (std::size_t i = 0; i < r.pieces.size(); ++i) {
        const auto& p = r.pieces[i];
        out << "  " << i << " " << p.kind << " nu = " << p.nu.str();
        if (p.nu_prime) out << " nu' = " << p.nu_prime->str();
        if (p.transversal) out << " d = " << p.transversal->d << " m = " << p.transversal->m;
        out << (p.conical ? " [conical]" : "") << " <- " << p.provenance << "\n";
    }
    for (const auto& e : r.edges) out << "  " << e.a << " -- " << e.b << "\n";

    out << "\nsummary\n";
    for (const auto& [kind, count] : r.summary.counts) out << "  " << kind << ": " << count << "\n";
    out << "  conical pieces: " << r.summary.conical_count << "\n";
    out << "  non-conical rate: " << (r.summary.non_conical_rate ? r.summary.non_conical_rate->str() : "none") << "\n";

    out << "\nverifications\n";
    for (const auto& v : r.verifications) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%.6g (expected %.6g, tolerance %.1e)", v.value, v.expected, v.tolerance);
        out << "  " << (v.passed ? "ok   " : "FAIL ") << v.name << ": " << buf << "\n";
    }
    return out.str();
}

}  // namespace germ::analysis
