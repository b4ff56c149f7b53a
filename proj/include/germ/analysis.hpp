#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "germ/carousel.hpp"
#include "germ/decomposition.hpp"
#include "germ/rational.hpp"

namespace germ::analysis {

struct AnalysisConfig {
    std::optional<Rational> order;  // truncation order; default: last characteristic exponent + 1
    carousel::CarouselConfig carousel;
    std::vector<double> t_sweep{1e-1, 1e-2, 1e-3};
    int cn_samples = 1000;
    std::uint64_t seed = 1;
    int quadrature_steps = 64;

    /// Throws std::invalid_argument for non-positive counts or t outside (0, 1].
    void validate() const;
};

struct BranchReport {
    std::string series;
    std::vector<Rational> exponents;
    std::vector<std::pair<long, long>> pairs;
    long ramification = 1;
    long conjugates = 1;
    Rational truncation_order;
    int carousel = -1;
    std::string tangent;
    friend bool operator==(const BranchReport&, const BranchReport&) = default;
};

struct LocusBranchReport {
    std::string equation;
    int multiplicity = 0;
    std::string embedded;
    friend bool operator==(const LocusBranchReport&, const LocusBranchReport&) = default;
};

struct NormalizationReport {
    std::string f_bar;
    std::string s;
    std::string q;
    bool smooth = false;
    std::string substitution;
    friend bool operator==(const NormalizationReport&, const NormalizationReport&) = default;
};

/// One analytic branch of a singular-locus curve and the tube around it.
struct TubeReport {
    std::string id;  // "<locus index>.<class index>"
    int locus_branch = 0;
    BranchReport puiseux;
    int axis_multiplicity = 0;
    pipeline::TransversalData transversal;
    int carousel = -1;
    int host_orbit = -1;
    Rational host_rate{1};
    Rational nu_prime{2};
    int circles = 1;
    int circle_degree = 1;
    friend bool operator==(const TubeReport&, const TubeReport&) = default;
};

struct RegionReport {
    int carousel = 0;
    std::string name;
    std::string kind;
    int level = 0;
    Rational nu{1};
    std::optional<Rational> nu_outer;
    std::string metric;
    std::optional<Rational> metric_nu_prime;
    bool conical = false;
    friend bool operator==(const RegionReport&, const RegionReport&) = default;
};

struct PieceReport {
    std::string kind;
    Rational nu{1};
    std::optional<Rational> nu_prime;
    std::optional<pipeline::TransversalData> transversal;
    std::string provenance;
    std::string chart;
    bool conical = true;
    friend bool operator==(const PieceReport&, const PieceReport&) = default;
};

struct EdgeReport {
    int a = 0;
    int b = 0;
    std::string gluing;
    friend bool operator==(const EdgeReport&, const EdgeReport&) = default;
};

struct CircleReport {
    int branch = 0;
    int sheet = 0;
    int degree = 1;
    int host_piece = -1;
    friend bool operator==(const CircleReport&, const CircleReport&) = default;
};

struct SummaryReport {
    std::map<std::string, int> counts;
    int conical_count = 0;
    std::optional<Rational> non_conical_rate;
    friend bool operator==(const SummaryReport&, const SummaryReport&) = default;
};

/// A numeric check and the tolerance it was held to.
struct Verification {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    friend bool operator==(const Verification&, const Verification&) = default;
};

struct AnalysisReport {
    std::string schema = "1";
    std::string input;
    std::string form;
    int d = 0;
    std::string g;
    std::vector<LocusBranchReport> locus;
    std::vector<std::pair<Rational, Rational>> isolated_candidates;
    std::string locus_rule;
    std::optional<NormalizationReport> normalization;
    bool smooth = false;
    std::string coordinate_change;  // empty when the input coordinates were used
    std::optional<std::string> discriminant;
    std::vector<BranchReport> discriminant_branches;
    std::vector<TubeReport> tubes;
    std::vector<RegionReport> regions;
    std::vector<PieceReport> pieces;
    std::vector<EdgeReport> edges;
    std::vector<CircleReport> circles;
    SummaryReport summary;
    std::vector<Verification> verifications;

    bool verified() const;
    friend bool operator==(const AnalysisReport&, const AnalysisReport&) = default;
};

/// Full pipeline on polynomial text: classify, singular locus, normalization,
/// discriminant, Puiseux data, carousels, assembly and metric checks.
/// Throws ParseError, CapabilityError for unsupported inputs and
/// std::invalid_argument for a germ that does not vanish at the origin.
AnalysisReport analyze(const std::string& text, const AnalysisConfig& config = {});

/// The decomposition graph recorded in a report, with charts rebuilt from the piece data.
decomposition::DecompositionGraph graph_from_report(const AnalysisReport& report);

/// Reports for the Puiseux classes of a plane curve g(z1, z2).
std::vector<BranchReport> describe_branches(const std::vector<puiseux::PuiseuxBranch>& branches);

/// Pretty-printed JSON, byte-stable for equal reports.
std::string to_json(const AnalysisReport& report);
/// Throws std::invalid_argument for malformed JSON or an unknown schema.
/// Absent sections are left empty.
AnalysisReport report_from_json(const std::string& text);

/// Human-readable report: locus, normalization, exponents, regions, pieces.
std::string to_text(const AnalysisReport& report);

}  // namespace germ::analysis
