#include "json.hpp"

#include <stdexcept>

#include "germ/analysis.hpp"

namespace germ::analysis {

namespace {

using nlohmann::json;

json rational(const Rational& r) {
    return {{"num", Rational(r.numerator()).to_long()}, {"den", Rational(r.denominator()).to_long()}};
}

Rational rational_from(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw std::invalid_argument("exponent must be {\"num\": p, \"den\": q}");
    const long den = j.at("den").get<long>();
    if (den <= 0) throw std::invalid_argument("exponent denominator must be positive");
    return Rational(Integer(j.at("num").get<long>()), Integer(den));
}

json optional_rational(const std::optional<Rational>& r) { return r ? rational(*r) : json(nullptr); }

std::optional<Rational> optional_rational_from(const json& j) {
    if (j.is_null()) return std::nullopt;
    return rational_from(j);
}

json rationals(const std::vector<Rational>& rs) {
    json out = json::array();
    for (const auto& r : rs) out.push_back(rational(r));
    return out;
}

json transversal(const pipeline::TransversalData& t) {
    return {{"d", t.d}, {"m", t.m}, {"milnor_number", t.milnor_number}, {"link_components", t.link_components}};
}

pipeline::TransversalData transversal_from(const json& j) {
    return {j.at("d").get<int>(), j.at("m").get<int>(), j.at("milnor_number").get<int>(),
            j.at("link_components").get<int>()};
}

json branch(const BranchReport& b) {
    json pairs = json::array();
    for (const auto& [m, n] : b.pairs) pairs.push_back({m, n});
    return {{"series", b.series},
            {"exponents", rationals(b.exponents)},
            {"pairs", pairs},
            {"ramification", b.ramification},
            {"conjugates", b.conjugates},
            {"truncation_order", rational(b.truncation_order)},
            {"carousel", b.carousel},
            {"tangent", b.tangent}};
}

BranchReport branch_from(const json& j) {
    BranchReport b;
    b.series = j.at("series").get<std::string>();
    for (const auto& e : j.at("exponents")) b.exponents.push_back(rational_from(e));
    for (const auto& p : j.at("pairs")) b.pairs.emplace_back(p.at(0).get<long>(), p.at(1).get<long>());
    b.ramification = j.at("ramification").get<long>();
    b.conjugates = j.at("conjugates").get<long>();
    b.truncation_order = rational_from(j.at("truncation_order"));
    b.carousel = j.at("carousel").get<int>();
    b.tangent = j.at("tangent").get<std::string>();
    return b;
}

// Array field, or an empty array when the report omits it.
const json& section(const json& j, const char* key) {
    static const json empty = json::array();
    return j.contains(key) ? j.at(key) : empty;
}

}  // namespace

std::string to_json(const AnalysisReport& r) {
    json j;
    j["schema"] = r.schema;
    j["input"] = r.input;
    j["form"] = r.form;
    j["d"] = r.d;
    j["g"] = r.g;

    json locus = json::array();
    for (const auto& b : r.locus) locus.push_back({{"equation", b.equation}, {"multiplicity", b.multiplicity}, {"embedded", b.embedded}});
    json candidates = json::array();
    for (const auto& [x, y] : r.isolated_candidates) candidates.push_back({rational(x), rational(y)});
    j["singular_locus"] = {{"branches", locus}, {"isolated_candidates", candidates}, {"rule", r.locus_rule}};

    if (r.normalization) {
        const auto& n = *r.normalization;
        j["normalization"] = {{"f_bar", n.f_bar}, {"s", n.s}, {"q", n.q}, {"smooth", n.smooth}, {"substitution", n.substitution}};
    } else {
        j["normalization"] = nullptr;
    }
    j["smooth"] = r.smooth;
    j["coordinate_change"] = r.coordinate_change;
    j["discriminant"] = r.discriminant ? json(*r.discriminant) : json(nullptr);

    json disc = json::array();
    for (const auto& b : r.discriminant_branches) disc.push_back(branch(b));
    j["discriminant_branches"] = disc;

    json tubes = json::array();
    for (const auto& t : r.tubes)
        tubes.push_back({{"id", t.id},
                         {"locus_branch", t.locus_branch},
                         {"puiseux", branch(t.puiseux)},
                         {"axis_multiplicity", t.axis_multiplicity},
                         {"transversal", transversal(t.transversal)},
                         {"carousel", t.carousel},
                         {"host_orbit", t.host_orbit},
                         {"host_rate", rational(t.host_rate)},
                         {"nu_prime", rational(t.nu_prime)},
                         {"circles", t.circles},
                         {"circle_degree", t.circle_degree}});
    j["singular_branches"] = tubes;

    json regions = json::array();
    for (const auto& g : r.regions)
        regions.push_back({{"carousel", g.carousel},
                           {"name", g.name},
                           {"kind", g.kind},
                           {"level", g.level},
                           {"nu", rational(g.nu)},
                           {"nu_outer", optional_rational(g.nu_outer)},
                           {"metric", g.metric},
                           {"metric_nu_prime", optional_rational(g.metric_nu_prime)},
                           {"conical", g.conical}});
    j["regions"] = regions;

    json pieces = json::array();
    for (const auto& p : r.pieces)
        pieces.push_back({{"kind", p.kind},
                          {"nu", rational(p.nu)},
                          {"nu_prime", optional_rational(p.nu_prime)},
                          {"transversal", p.transversal ? transversal(*p.transversal) : json(nullptr)},
                          {"provenance", p.provenance},
                          {"chart", p.chart},
                          {"conical", p.conical}});
    json edges = json::array();
    for (const auto& e : r.edges) edges.push_back({{"a", e.a}, {"b", e.b}, {"gluing", e.gluing}});
    json circles = json::array();
    for (const auto& c : r.circles)
        circles.push_back({{"branch", c.branch}, {"sheet", c.sheet}, {"degree", c.degree}, {"host_piece", c.host_piece}});
    j["graph"] = {{"pieces", pieces}, {"edges", edges}, {"circles", circles}};

    j["summary"] = {{"counts", r.summary.counts},
                    {"conical_count", r.summary.conical_count},
                    {"non_conical_rate", optional_rational(r.summary.non_conical_rate)}};

    json checks = json::array();
    for (const auto& v : r.verifications)
        checks.push_back({{"name", v.name},
                          {"value", v.value},
                          {"expected", v.expected},
                          {"tolerance", v.tolerance},
                          {"passed", v.passed}});
    j["verifications"] = checks;
    return j.dump(2) + "\n";
}

AnalysisReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("report must be a JSON object");
    if (j.value("schema", std::string()) != "1") throw std::invalid_argument("unsupported report schema");

    try {
        AnalysisReport r;
        r.input = j.value("input", std::string());
        r.form = j.value("form", std::string());
        r.d = j.value("d", 0);
        r.g = j.value("g", std::string());
        if (j.contains("singular_locus")) {
            const auto& l = j.at("singular_locus");
            for (const auto& b : section(l, "branches"))
                r.locus.push_back({b.at("equation").get<std::string>(), b.at("multiplicity").get<int>(),
                                   b.at("embedded").get<std::string>()});
            for (const auto& c : section(l, "isolated_candidates"))
                r.isolated_candidates.emplace_back(rational_from(c.at(0)), rational_from(c.at(1)));
            r.locus_rule = l.value("rule", std::string());
        }
        if (j.contains("normalization") && !j.at("normalization").is_null()) {
            const auto& n = j.at("normalization");
            r.normalization = NormalizationReport{n.at("f_bar").get<std::string>(), n.at("s").get<std::string>(),
                                                  n.at("q").get<std::string>(), n.at("smooth").get<bool>(),
                                                  n.at("substitution").get<std::string>()};
        }
        r.smooth = j.value("smooth", false);
        r.coordinate_change = j.value("coordinate_change", std::string());
        if (j.contains("discriminant") && !j.at("discriminant").is_null())
            r.discriminant = j.at("discriminant").get<std::string>();
        for (const auto& b : section(j, "discriminant_branches")) r.discriminant_branches.push_back(branch_from(b));
        for (const auto& t : section(j, "singular_branches")) {
            TubeReport tube;
            tube.id = t.at("id").get<std::string>();
            tube.locus_branch = t.at("locus_branch").get<int>();
            tube.puiseux = branch_from(t.at("puiseux"));
            tube.axis_multiplicity = t.at("axis_multiplicity").get<int>();
            tube.transversal = transversal_from(t.at("transversal"));
            tube.carousel = t.at("carousel").get<int>();
            tube.host_orbit = t.at("host_orbit").get<int>();
            tube.host_rate = rational_from(t.at("host_rate"));
            tube.nu_prime = rational_from(t.at("nu_prime"));
            tube.circles = t.at("circles").get<int>();
            tube.circle_degree = t.at("circle_degree").get<int>();
            r.tubes.push_back(std::move(tube));
        }
        for (const auto& g : section(j, "regions"))
            r.regions.push_back({g.at("carousel").get<int>(), g.at("name").get<std::string>(), g.at("kind").get<std::string>(),
                                 g.at("level").get<int>(), rational_from(g.at("nu")), optional_rational_from(g.at("nu_outer")),
                                 g.at("metric").get<std::string>(), optional_rational_from(g.at("metric_nu_prime")),
                                 g.at("conical").get<bool>()});
        if (j.contains("graph")) {
            const auto& g = j.at("graph");
            for (const auto& p : section(g, "pieces")) {
                PieceReport piece;
                piece.kind = p.at("kind").get<std::string>();
                piece.nu = rational_from(p.at("nu"));
                piece.nu_prime = optional_rational_from(p.at("nu_prime"));
                if (!p.at("transversal").is_null()) piece.transversal = transversal_from(p.at("transversal"));
                piece.provenance = p.at("provenance").get<std::string>();
                piece.chart = p.at("chart").get<std::string>();
                piece.conical = p.at("conical").get<bool>();
                r.pieces.push_back(std::move(piece));
            }
            for (const auto& e : section(g, "edges"))
                r.edges.push_back({e.at("a").get<int>(), e.at("b").get<int>(), e.at("gluing").get<std::string>()});
            for (const auto& c : section(g, "circles"))
                r.circles.push_back({c.at("branch").get<int>(), c.at("sheet").get<int>(), c.at("degree").get<int>(),
                                     c.at("host_piece").get<int>()});
        }
        if (j.contains("summary")) {
            const auto& s = j.at("summary");
            r.summary.counts = s.at("counts").get<std::map<std::string, int>>();
            r.summary.conical_count = s.at("conical_count").get<int>();
            r.summary.non_conical_rate = optional_rational_from(s.at("non_conical_rate"));
        }
        for (const auto& v : section(j, "verifications"))
            r.verifications.push_back({v.at("name").get<std::string>(), v.at("value").get<double>(),
                                       v.at("expected").get<double>(), v.at("tolerance").get<double>(),
                                       v.at("passed").get<bool>()});
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed report: ") + e.what());
    }
}

}  // namespace germ::analysis
