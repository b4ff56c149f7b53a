#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "germ/chart_kind.hpp"
#include "germ/puiseux.hpp"

namespace germ::carousel {

using puiseux::PuiseuxBranch;

/// Band constants of one level: alpha < beta bound the band, gamma the holes.
struct LevelConstants {
    double alpha = 0.5;
    double beta = 2.0;
    double gamma = 0.25;
};

struct CarouselConfig {
    double epsilon = 0.25;
    double mu = 2.0;
    LevelConstants defaults;
    std::vector<LevelConstants> per_level;  // overrides for depth 1, 2, ...
    LevelConstants at_level(int depth) const;
};

enum class RegionKind : std::uint8_t { Upsilon, Omega, Lambda, OuterA };

std::string to_string(RegionKind kind);

struct Region {
    RegionKind kind = RegionKind::OuterA;
    int level = 0;                      // depth for Upsilon/Omega, running index for Lambda
    Rational nu{1};                     // nu_k; for Omega the inner exponent nu_i
    std::optional<Rational> nu_outer;   // Omega only: nu_{i-1}
    int orbit = -1;                     // cluster orbit this region belongs to; -1 for OuterA
    bool whole_neighborhood = false;    // Lambda = A (no split)
    std::string name;
    PuiseuxBranch approximant;          // defining approximant (terms below nu)
    friend bool operator==(const Region& a, const Region& b) { return a.name == b.name && a.kind == b.kind; }
};

/// A cluster of conjugate roots sharing all terms below `exponent`.
struct ClusterNode {
    int parent = -1;
    int depth = 1;
    bool leaf = false;
    Rational exponent;              // split exponent; for leaves the parent's exponent
    std::vector<int> roots;         // indices into CarouselSpec::roots
    std::vector<int> children;
    int orbit = -1;
    PuiseuxBranch approximant;      // terms with exponent < split exponent; whole series for leaves
    LevelConstants constants;
};

struct Orbit {
    int representative = -1;  // node index
    int parent = -1;          // parent orbit
    int depth = 1;
    bool leaf = false;
    Rational exponent;
    std::vector<int> nodes;
};

struct RootSeries {
    int branch = 0;   // index into approximants
    long conjugate = 0;
    PuiseuxBranch series;
};

struct CarouselSpec {
    double epsilon = 0.25;
    double mu = 2.0;
    std::complex<double> tangent;
    bool tangent_exact = true;
    Rational tangent_value;                   // valid when tangent_exact
    std::vector<PuiseuxBranch> approximants;  // class representatives in this direction
    std::vector<RootSeries> roots;
    std::vector<ClusterNode> nodes;           // nodes[0] is the root cluster
    std::vector<Orbit> orbits;
    std::vector<Region> regions;
    std::vector<int> orbit_regions_omega, orbit_regions_upsilon, orbit_regions_lambda;  // by orbit, -1 if none
};

/// Tangent coefficient of a branch: coefficient of z1^1, or 0 when the leading
/// exponent exceeds 1. Throws CapabilityError for a leading exponent below 1.
std::complex<double> tangent_coefficient(const PuiseuxBranch& b);

/// One carousel for branches sharing a tangent direction. Throws
/// std::invalid_argument for an empty list, mixed directions or bad constants.
CarouselSpec build_carousel(const std::vector<PuiseuxBranch>& branches, const CarouselConfig& config = {});

/// Groups branches by tangent direction and builds one carousel per direction.
std::vector<CarouselSpec> build_carousels(const std::vector<PuiseuxBranch>& branches,
                                          const CarouselConfig& config = {});

/// Region containing (x, y). Points with |x| > epsilon or |y - alpha x| > mu |x|
/// are OuterA. Descends the cluster tree through the first hole
/// |y - P_child| < gamma s containing the point; hole boundaries stay in the
/// enclosing band. Throws std::invalid_argument for x = 0.
Region classify_point(const CarouselSpec& spec, std::complex<double> x, std::complex<double> y);

/// Band inequalities alpha s <= |y - P| <= beta s at the node's level with the
/// redundant lower bound gamma s, without excluding holes.
bool upsilon_inequalities(const CarouselSpec& spec, int node, std::complex<double> x, std::complex<double> y);

struct RegionMetric {
    ChartKind kind = ChartKind::Cone;
    Rational nu{1};
    std::optional<Rational> nu_prime;
    bool over_disk = false;
    bool conical = false;
    /// Shrink rate of the piece: nu_prime for Cheeger-Nagase, nu otherwise.
    Rational rate() const { return nu_prime ? *nu_prime : nu; }
};

RegionMetric region_metric_type(const Region& region);

/// Where a curve branch sits in a carousel, decided from contact orders.
struct BranchLocation {
    bool inside = false;  // same tangent direction
    int orbit = -1;       // orbit whose MappingTorusCone hosts the branch
    Rational nu{1};       // exponent of that orbit
};

BranchLocation locate_branch(const CarouselSpec& spec, const PuiseuxBranch& branch);

}  // namespace germ::carousel
