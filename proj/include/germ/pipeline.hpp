#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "germ/algebra.hpp"
#include "germ/mpoly.hpp"

namespace germ::pipeline {

using poly::MPoly;

enum class InputForm : std::uint8_t { VerticalClass, General };

/// A germ f at the origin of C^3. For VerticalClass, f = z3^d - g(z1, z2).
struct GermInput {
    MPoly f;
    InputForm form = InputForm::General;
    int d = 0;
    MPoly g;
};

/// Throws std::invalid_argument when f is zero or f(0) != 0.
GermInput classify_input(const MPoly& f);

struct CurveBranch {
    MPoly poly;                   // squarefree factor of g through the origin
    unsigned multiplicity = 0;    // multiplicity in g, at least 2
    friend bool operator==(const CurveBranch&, const CurveBranch&) = default;
};

using RationalPoint = std::array<Rational, 2>;

struct SingularLocusReport {
    int d = 0;
    std::vector<CurveBranch> curve_branches;
    /// Points of the sampled grid where the squarefree part and its gradient vanish.
    std::optional<std::vector<RationalPoint>> isolated_candidates;
    std::string rule;
    /// Rendering of the embedded equations for branch i: "z3 = 0, <poly> = 0".
    std::string embedded_equations(std::size_t i) const;
};

/// Curve components of the singular set {z3 = 0, g = 0, grad g = 0}: the factors
/// of g through the origin with multiplicity >= 2. Throws CapabilityError for General input.
SingularLocusReport singular_locus(const GermInput& germ);

struct NormalizedGerm {
    MPoly f_bar;     // z3^2 - s
    MPoly q;         // z3 = q * w
    MPoly s;         // squarefree part, carries the unit of g
    bool smooth = false;
    std::string substitution;
};

/// g = s * q^2 with q = prod g_i^floor(m_i/2), s = unit * prod g_i^(m_i mod 2).
/// Throws CapabilityError unless the germ is VerticalClass with d = 2.
NormalizedGerm normalize_double_cover(const GermInput& germ);

/// True when s is a unit at the origin or has nonzero gradient there.
bool smooth_at_origin(const MPoly& s);

/// Reduced part of Res_z3(f_bar, d f_bar / d z3) through the origin, primitive
/// with positive leading coefficient. Throws std::domain_error when the
/// resultant is zero or constant, and CapabilityError when f_bar is not z3^d - g.
MPoly discriminant_curve(const MPoly& f_bar);

/// Local multiplicity of the projection of {branch = 0} to the given axis:
/// the order at 0 of the branch restricted to the axis. The axis is z1 or z2.
/// Throws CapabilityError when the leading coefficient in the fiber variable
/// vanishes at the origin.
int axis_multiplicity(const MPoly& branch, poly::Var axis);

struct TransversalData {
    int d = 0;
    int m = 0;
    int milnor_number = 0;
    int link_components = 0;
    friend bool operator==(const TransversalData&, const TransversalData&) = default;
};

/// Plane-germ model z3^d - w^m; throws std::invalid_argument when d < 2 or m < 2.
TransversalData transversal_data(int d, int m);

/// Grid points k/4 (|k| <= 4) where s and its gradient vanish.
std::vector<RationalPoint> sample_isolated_candidates(const MPoly& s);

}  // namespace germ::pipeline
