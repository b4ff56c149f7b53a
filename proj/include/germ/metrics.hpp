#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "germ/chart_kind.hpp"
#include "germ/rational.hpp"

namespace germ::metrics {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Riemannian metric on a polygon (dimension 2) or on the unit box (other dimensions).
struct BaseMetric {
    int dimension = 2;
    std::function<MatrixXd(const VectorXd&)> tensor;  // empty: flat
    std::vector<Eigen::Vector2d> polygon;             // dimension 2 only; empty: unit square

    static BaseMetric flat_square(double side = 1.0);
    /// Flat unit square with the metric multiplied by factor^2.
    static BaseMetric scaled_square(double factor);

    bool flat() const { return !tensor; }
    bool contains(const VectorXd& y, double tol = 1e-12) const;
    MatrixXd at(const VectorXd& y) const;
    /// Vertex diameter for flat metrics; otherwise the largest straight-segment
    /// length between densely sampled boundary points.
    double diameter() const;
};

/// Finite-order linear gluing y -> c + M (y - c) about the base polygon's centroid.
struct Monodromy {
    Eigen::Matrix2d linear = Eigen::Matrix2d::Identity();
    std::string description = "identity";
    static Monodromy rotation_quarter();
    static Monodromy reflection();
};

/// dt^2 + t^2 g on (t, y).
struct ConeMetric {
    BaseMetric base;
};

/// dt^2 + t^2 dtheta^2 + t^(2 nu) g(y) on (t, theta, y1, y2).
struct HsiangPati {
    Rational nu{1};
    BaseMetric base;
};

/// dt^2 + t^2 dtheta^2 + t^(2 nu) (ds^2 + h(t, s)^2 dTheta^2), h = (s + t^(nu' - nu)) / (2 pi),
/// on (t, theta, s, Theta) in (0, 1] x [0, 1]^3.
struct CheegerNagase {
    Rational nu{1};
    Rational nu_prime{2};
};

/// dt^2 + t^2 dtheta^2 + (t^nu - t^nu')^2 dr^2 + ((r - 1) t^nu + (2 - r) t^nu')^2 dpsi^2
/// on (t, theta, r, psi) in (0, 1] x [0, 2 pi] x [1, 2] x [0, 2 pi].
struct AnnulusFamily {
    Rational nu{1};
    Rational nu_prime{2};
};

/// dt^2 + t^2 dtheta^2 + t^(2 nu) g_theta(y) on (t, theta, y1, y2), theta in [0, 2 pi].
/// g_theta = g0 for theta <= delta, the pullback by the monodromy for
/// theta >= 2 pi - delta, linear interpolation of coefficients in between.
struct MappingTorusCone {
    Rational nu{1};
    BaseMetric base;
    Monodromy monodromy;
    double delta = 0.1;
};

using MetricChart = std::variant<ConeMetric, HsiangPati, CheegerNagase, AnnulusFamily, MappingTorusCone>;

/// Validating constructors: nu >= 1, and nu' > nu for the two-exponent charts.
MetricChart cone(BaseMetric base = BaseMetric::flat_square());
MetricChart hsiang_pati(const Rational& nu, BaseMetric base = BaseMetric::flat_square());
MetricChart cheeger_nagase(const Rational& nu, const Rational& nu_prime);
MetricChart annulus_family(const Rational& nu, const Rational& nu_prime);
MetricChart mapping_torus_cone(const Rational& nu, BaseMetric base = BaseMetric::flat_square(),
                               Monodromy monodromy = {});

ChartKind kind(const MetricChart& chart);
int dimension(const MetricChart& chart);
/// Shrink exponent of the chart's fiber: nu' for Cheeger-Nagase, 1 for cones.
Rational shrink_rate(const MetricChart& chart);
bool contains(const MetricChart& chart, const VectorXd& point, double tol = 1e-12);

/// Coefficient matrix at a point. Throws std::domain_error for t <= 0 or a
/// point outside the chart, std::invalid_argument for a wrong dimension.
MatrixXd metric_tensor_at(const MetricChart& chart, const VectorXd& point);

/// Nagase function h(t, s) = (s + t^(nu' - nu)) / (2 pi).
double nagase_h(double t, double s, const Rational& nu, const Rational& nu_prime);

/// Curve on [a, b], smooth between breakpoints.
struct ParamCurve {
    double a = 0.0;
    double b = 1.0;
    std::function<VectorXd(double)> position;
    std::function<VectorXd(double)> velocity;  // optional; finite differences otherwise
    std::vector<double> breakpoints;

    static ParamCurve segment(const VectorXd& from, const VectorXd& to);
    static ParamCurve polyline(const std::vector<VectorXd>& points);
    VectorXd derivative(double s) const;
};

/// Composite 5-point Gauss-Legendre quadrature of sqrt(v^T G v) over `steps`
/// panels (further split at breakpoints). Throws std::domain_error when the
/// curve leaves the chart, std::invalid_argument for steps < 2.
double curve_length(const MetricChart& chart, const ParamCurve& curve, int steps = 64);

/// t^nu diam(Y) for charts with a fiber factor. Throws std::invalid_argument
/// for ConeMetric and AnnulusFamily, std::domain_error for t outside (0, 1].
double fiber_diameter(const MetricChart& chart, double t);

using LoopFamily = std::function<ParamCurve(double t)>;

/// The loop used for shrink fits: base-coordinate segment for cones, the base
/// boundary for Hsiang-Pati and mapping tori, the Theta-loop at s = 0 for
/// Cheeger-Nagase, the psi-circle at r = 2 for the annulus family.
LoopFamily standard_loop(const MetricChart& chart);

struct ShrinkFit {
    double exponent = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // root mean square of log-length residuals
    std::vector<double> t;
    std::vector<double> lengths;
};

/// Least-squares slope of log(length) against log(t). Needs >= 3 samples in
/// (0, 1] spanning at least two decades; throws std::invalid_argument otherwise.
ShrinkFit fit_shrink_exponent(const MetricChart& chart, const LoopFamily& loops, const std::vector<double>& t_samples,
                              int steps = 64);

struct CnCheck {
    double max_deviation = 0.0;
    std::size_t evaluated = 0;
    std::size_t flagged = 0;  // samples at t = 1, where both annulus radii coincide
    bool degenerate = false;  // nu' = nu: the change of variables is singular and skipped
};

/// Compares the annulus fiber metric with the Cheeger-Nagase fiber metric pulled
/// back by s = (r - 1)(1 - t^(nu' - nu)), Theta = 2 pi psi at each (t, r, psi).
/// Throws std::invalid_argument unless nu' >= nu >= 1 and samples lie in
/// (0, 1] x [1, 2] x [0, 2 pi).
CnCheck verify_cn_identity(const Rational& nu, const Rational& nu_prime, const std::vector<std::array<double, 3>>& samples);

/// The substitution above as a map of full chart coordinates (t, theta, r, psi) -> (t, theta, s, Theta).
VectorXd annulus_to_cn(const Rational& nu, const Rational& nu_prime, const VectorXd& p);

using CoordinateMap = std::function<VectorXd(const VectorXd&)>;

/// max over curves of max(lA / lB, lB / lA), lB the length of the mapped curve
/// in chart B. Throws std::domain_error when a mapped curve leaves chart B.
double bilipschitz_ratio(const MetricChart& a, const MetricChart& b, const CoordinateMap& map,
                         const std::vector<ParamCurve>& curves, int steps = 64);

}  // namespace germ::metrics
