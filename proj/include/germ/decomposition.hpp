#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "germ/carousel.hpp"
#include "germ/metrics.hpp"
#include "germ/pipeline.hpp"

namespace germ::decomposition {

enum class PieceKind : std::uint8_t { SeifertCone, ThickenedTorusCone, MappingTorusCone, TubularCone };

std::string to_string(PieceKind kind);
/// Throws std::invalid_argument for an unknown name.
PieceKind piece_kind_from_string(const std::string& name);

struct Piece {
    PieceKind kind = PieceKind::SeifertCone;
    Rational nu{1};
    std::optional<Rational> nu_prime;                     // ThickenedTorusCone only
    std::optional<pipeline::TransversalData> transversal;  // TubularCone only
    std::string provenance;
    metrics::MetricChart chart = metrics::cone();

    /// nu' for thickened tori, nu otherwise.
    Rational rate() const { return nu_prime ? *nu_prime : nu; }
    bool conical() const { return rate() == Rational(1); }
};

struct Edge {
    int a = 0;
    int b = 0;
    std::string gluing = "isometric boundary identification";
};

/// Circle of the normalization over a singular branch: sheet `sheet` over branch `branch`.
struct MarkedCircle {
    int branch = 0;
    int sheet = 0;
    int degree = 1;
    int host_piece = -1;
};

struct CircleClass {
    int branch = 0;
    int degree = 1;
    std::vector<int> sheets;
};

struct DecompositionGraph {
    std::vector<Piece> pieces;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> boundary_order;  // neighbours of each piece in gluing order
    std::vector<MarkedCircle> circles;

    bool empty() const { return pieces.empty(); }
    std::vector<int> neighbours(int piece) const { return boundary_order.at(static_cast<std::size_t>(piece)); }
};

/// One singular-locus branch and where its tube attaches.
struct TubeInput {
    std::string branch_id;
    std::optional<pipeline::TransversalData> transversal;
    int carousel = -1;      // -1: the branch lies outside every carousel
    int host_orbit = -1;    // orbit of that carousel; -1: the outer Seifert piece hosts it
    Rational nu_prime{2};   // shrink rate of the tube
    int circles = 1;        // circles of the normalization over the branch
    int circle_degree = 1;
};

struct AssemblyInput {
    std::vector<carousel::CarouselSpec> carousels;
    std::vector<TubeInput> tubes;
};

/// Outer SeifertCone, then per carousel and internal orbit a ThickenedTorusCone
/// and a MappingTorusCone in nesting order, then per tube a ThickenedTorusCone
/// and a TubularCone. Rate-1 and leaf Lambda regions are absorbed into their
/// enclosing piece. Throws std::invalid_argument for inconsistent inputs.
DecompositionGraph assemble(const AssemblyInput& input);

/// Shrink rate of the piece hosting an orbit: the orbit exponent, or 1 for the outer piece.
Rational host_rate(const AssemblyInput& input, int carousel, int orbit);

/// Groups circles by target branch. Throws std::invalid_argument on mixed
/// degrees within a class or a degree below 1.
std::vector<CircleClass> glue_circles(const std::vector<MarkedCircle>& circles);

struct HJFraction {
    long n = 1;
    long q = 1;
    std::vector<long> entries;
};

/// n/q = a1 - 1/(a2 - ...), all entries >= 2. Throws std::invalid_argument
/// unless n > q >= 1 and gcd(n, q) = 1.
HJFraction hj_continued_fraction(long n, long q);
Rational evaluate_hj(const std::vector<long>& entries);

struct PieceFlag {
    int piece = 0;
    PieceKind kind = PieceKind::SeifertCone;
    bool conical = true;
    Rational rate{1};
};

struct Summary {
    std::map<PieceKind, int> counts;
    std::vector<PieceFlag> flags;
    int conical_count = 0;
    std::optional<Rational> non_conical_rate;  // smallest rate above 1
};

Summary summary(const DecompositionGraph& graph);

/// Deterministic DOT text; "graph G {}\n" for the empty graph.
std::string to_dot(const DecompositionGraph& graph);

/// Graph invariants: connectivity, degree 2 for thickened tori, tubes adjacent
/// only to thickened tori, no two non-torus pieces adjacent. Empty string when
/// all hold, otherwise the first violation.
std::string check_invariants(const DecompositionGraph& graph);

}  // namespace germ::decomposition
