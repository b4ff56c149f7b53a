#include "germ/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace germ::metrics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                       0.9061798459386640};
constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                         0.4786286704993665, 0.2369268850561891};

double tpow(double t, const Rational& e) { return std::pow(t, e.to_double()); }

bool in_range(double v, double lo, double hi, double tol) { return v >= lo - tol && v <= hi + tol; }

void check_exponents(const Rational& nu) {
    if (nu < Rational(1)) throw std::invalid_argument("shrink exponent nu must be >= 1");
}

void check_exponents(const Rational& nu, const Rational& nu_prime) {
    check_exponents(nu);
    if (!(nu_prime > nu)) throw std::invalid_argument("need nu' > nu");
}

std::vector<Eigen::Vector2d> polygon_of(const BaseMetric& b) {
    if (!b.polygon.empty()) return b.polygon;
    return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
}

Eigen::Vector2d centroid(const BaseMetric& b) {
    const auto poly = polygon_of(b);
    Eigen::Vector2d c = Eigen::Vector2d::Zero();
    for (const auto& v : poly) c += v;
    return c / static_cast<double>(poly.size());
}

double segment_length(const BaseMetric& base, const VectorXd& p, const VectorXd& q, int panels) {
    const VectorXd v = q - p;
    double total = 0.0;
    for (int k = 0; k < panels; ++k) {
        const double lo = static_cast<double>(k) / panels;
        const double hi = static_cast<double>(k + 1) / panels;
        for (std::size_t i = 0; i < kNodes.size(); ++i) {
            const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * kNodes[i];
            const VectorXd y = p + s * v;
            total += 0.5 * (hi - lo) * kWeights[i] * std::sqrt(std::max(0.0, v.dot(base.at(y) * v)));
        }
    }
    return total;
}

// diag(1, theta_scale, fiber) in (t, theta, fiber coordinates).
MatrixXd block(double theta_scale, const MatrixXd& fiber) {
    const auto n = fiber.rows();
    MatrixXd g = MatrixXd::Zero(n + 2, n + 2);
    g(0, 0) = 1.0;
    g(1, 1) = theta_scale;
    g.bottomRightCorner(n, n) = fiber;
    return g;
}

void require_dimension(const VectorXd& p, int n) {
    if (p.size() != n) throw std::invalid_argument("point has dimension " + std::to_string(p.size()) +
                                                   ", chart needs " + std::to_string(n));
}

MatrixXd mapping_torus_fiber(const MappingTorusCone& m, double theta, const VectorXd& y) {
    const MatrixXd g0 = m.base.at(y);
    const double lo = m.delta;
    const double hi = kTwoPi - m.delta;
    double w = 0.0;
    if (theta >= hi) {
        w = 1.0;
    } else if (theta > lo) {
        w = (theta - lo) / (hi - lo);
    }
    if (w == 0.0) return g0;
    const Eigen::Vector2d c = centroid(m.base);
    const Eigen::Vector2d hy = c + m.monodromy.linear * (Eigen::Vector2d(y(0), y(1)) - c);
    const MatrixXd pulled = m.monodromy.linear.transpose() * m.base.at(hy) * m.monodromy.linear;
    return (1.0 - w) * g0 + w * pulled;
}

}  // namespace

BaseMetric BaseMetric::flat_square(double side) {
    BaseMetric b;
    b.polygon = {{0.0, 0.0}, {side, 0.0}, {side, side}, {0.0, side}};
    return b;
}

BaseMetric BaseMetric::scaled_square(double factor) {
    BaseMetric b = flat_square();
    const double f2 = factor * factor;
    b.tensor = [f2](const VectorXd&) { return MatrixXd(f2 * MatrixXd::Identity(2, 2)); };
    return b;
}

bool BaseMetric::contains(const VectorXd& y, double tol) const {
    if (y.size() != dimension) return false;
    if (dimension != 2) {
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if (!in_range(y(i), 0.0, 1.0, tol)) return false;
        return true;
    }
    const auto poly = polygon_of(*this);
    const Eigen::Vector2d p(y(0), y(1));
    bool inside = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[j];
        // On-edge points count as inside.
        const Eigen::Vector2d e = b - a;
        const double len2 = e.squaredNorm();
        const double u = len2 > 0 ? std::clamp((p - a).dot(e) / len2, 0.0, 1.0) : 0.0;
        if ((a + u * e - p).norm() <= tol) return true;
        if ((a.y() > p.y()) != (b.y() > p.y()) && p.x() < (b.x() - a.x()) * (p.y() - a.y()) / (b.y() - a.y()) + a.x())
            inside = !inside;
    }
    return inside;
}

MatrixXd BaseMetric::at(const VectorXd& y) const {
    if (!tensor) return MatrixXd::Identity(dimension, dimension);
    return tensor(y);
}

double BaseMetric::diameter() const {
    if (dimension != 2) {
        if (flat()) return std::sqrt(static_cast<double>(dimension));
        throw std::invalid_argument("diameter sampling is only implemented for polygons");
    }
    const auto poly = polygon_of(*this);
    if (flat()) {
        double d = 0.0;
        for (const auto& a : poly)
            for (const auto& b : poly) d = std::max(d, (a - b).norm());
        return d;
    }
    constexpr int kPerEdge = 16;
    std::vector<VectorXd> samples;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Eigen::Vector2d& a = poly[i];
        const Eigen::Vector2d& b = poly[(i + 1) % poly.size()];
        for (int k = 0; k < kPerEdge; ++k) {
            const Eigen::Vector2d p = a + (b - a) * (static_cast<double>(k) / kPerEdge);
            samples.emplace_back(VectorXd(p));
        }
    }
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j) d = std::max(d, segment_length(*this, samples[i], samples[j], 8));
    return d;
}

Monodromy Monodromy::rotation_quarter() {
    Monodromy m;
    m.linear << 0.0, -1.0, 1.0, 0.0;
    m.description = "rotation by pi/2";
    return m;
}

Monodromy Monodromy::reflection() {
    Monodromy m;
    m.linear << -1.0, 0.0, 0.0, 1.0;
    m.description = "reflection y1 -> -y1";
    return m;
}

MetricChart cone(BaseMetric base) { return ConeMetric{std::move(base)}; }

MetricChart hsiang_pati(const Rational& nu, BaseMetric base) {
    check_exponents(nu);
    if (base.dimension != 2) throw std::invalid_argument("Hsiang-Pati base must be a polygon");
    return HsiangPati{nu, std::move(base)};
}

MetricChart cheeger_nagase(const Rational& nu, const Rational& nu_prime) {
    check_exponents(nu, nu_prime);
    return CheegerNagase{nu, nu_prime};
}

MetricChart annulus_family(const Rational& nu, const Rational& nu_prime) {
    check_exponents(nu, nu_prime);
    return AnnulusFamily{nu, nu_prime};
}

MetricChart mapping_torus_cone(const Rational& nu, BaseMetric base, Monodromy monodromy) {
    check_exponents(nu);
    if (base.dimension != 2) throw std::invalid_argument("mapping torus base must be a polygon");
    // Finite order: some power up to 12 is the identity.
    Eigen::Matrix2d power = monodromy.linear;
    bool finite = false;
    for (int k = 1; k <= 12 && !finite; ++k) {
        finite = (power - Eigen::Matrix2d::Identity()).norm() < 1e-12;
        power = power * monodromy.linear;
    }
    if (!finite) throw std::invalid_argument("monodromy must be a finite-order linear map");
    return MappingTorusCone{nu, std::move(base), std::move(monodromy), 0.1};
}

ChartKind kind(const MetricChart& chart) {
    switch (chart.index()) {
        case 0: return ChartKind::Cone;
        case 1: return ChartKind::HsiangPati;
        case 2: return ChartKind::CheegerNagase;
        case 3: return ChartKind::AnnulusFamily;
        default: return ChartKind::MappingTorusCone;
    }
}

int dimension(const MetricChart& chart) {
    if (const auto* c = std::get_if<ConeMetric>(&chart)) return 1 + c->base.dimension;
    return 4;
}

Rational shrink_rate(const MetricChart& chart) {
    return std::visit(
        [](const auto& c) -> Rational {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConeMetric>) {
                return Rational(1);
            } else if constexpr (std::is_same_v<T, CheegerNagase>) {
                return c.nu_prime;
            } else {
                return c.nu;
            }
        },
        chart);
}

bool contains(const MetricChart& chart, const VectorXd& p, double tol) {
    if (p.size() != dimension(chart)) return false;
    if (!(p(0) > 0.0) || p(0) > 1.0 + tol) return false;
    return std::visit(
        [&](const auto& c) -> bool {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConeMetric>) {
                return c.base.contains(p.tail(c.base.dimension), tol);
            } else if constexpr (std::is_same_v<T, CheegerNagase>) {
                return in_range(p(1), 0.0, 1.0, tol) && in_range(p(2), 0.0, 1.0, tol) && in_range(p(3), 0.0, 1.0, tol);
            } else if constexpr (std::is_same_v<T, AnnulusFamily>) {
                return in_range(p(1), 0.0, kTwoPi, tol) && in_range(p(2), 1.0, 2.0, tol) && in_range(p(3), 0.0, kTwoPi, tol);
            } else {
                return in_range(p(1), 0.0, kTwoPi, tol) && c.base.contains(p.tail(2), tol);
            }
        },
        chart);
}

double nagase_h(double t, double s, const Rational& nu, const Rational& nu_prime) {
    return (s + tpow(t, nu_prime - nu)) / kTwoPi;
}

MatrixXd metric_tensor_at(const MetricChart& chart, const VectorXd& p) {
    require_dimension(p, dimension(chart));
    const double t = p(0);
    if (!(t > 0.0)) throw std::domain_error("metric charts need t > 0");
    if (!contains(chart, p)) throw std::domain_error("point outside the chart domain");
    return std::visit(
        [&](const auto& c) -> MatrixXd {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConeMetric>) {
                const int n = c.base.dimension;
                MatrixXd g = MatrixXd::Zero(n + 1, n + 1);
                g(0, 0) = 1.0;
                g.bottomRightCorner(n, n) = t * t * c.base.at(p.tail(n));
                return g;
            } else if constexpr (std::is_same_v<T, HsiangPati>) {
                return block(t * t, tpow(t, Rational(2) * c.nu) * c.base.at(p.tail(2)));
            } else if constexpr (std::is_same_v<T, CheegerNagase>) {
                const double scale = tpow(t, Rational(2) * c.nu);
                const double h = nagase_h(t, p(2), c.nu, c.nu_prime);
                MatrixXd fiber = MatrixXd::Zero(2, 2);
                fiber(0, 0) = scale;
                fiber(1, 1) = scale * h * h;
                return block(t * t, fiber);
            } else if constexpr (std::is_same_v<T, AnnulusFamily>) {
                const double a = tpow(t, c.nu);
                const double b = tpow(t, c.nu_prime);
                const double r = p(2);
                MatrixXd fiber = MatrixXd::Zero(2, 2);
                fiber(0, 0) = (a - b) * (a - b);
                const double circ = (r - 1.0) * a + (2.0 - r) * b;
                fiber(1, 1) = circ * circ;
                return block(t * t, fiber);
            } else {
                return block(t * t, tpow(t, Rational(2) * c.nu) * mapping_torus_fiber(c, p(1), p.tail(2)));
            }
        },
        chart);
}

ParamCurve ParamCurve::segment(const VectorXd& from, const VectorXd& to) {
    ParamCurve c;
    c.position = [from, to](double s) { return VectorXd(from + s * (to - from)); };
    c.velocity = [from, to](double) { return VectorXd(to - from); };
    return c;
}

ParamCurve ParamCurve::polyline(const std::vector<VectorXd>& points) {
    if (points.size() < 2) throw std::invalid_argument("polyline needs at least two points");
    ParamCurve c;
    const double pieces = static_cast<double>(points.size() - 1);
    c.b = pieces;
    for (std::size_t k = 1; k + 1 < points.size(); ++k) c.breakpoints.push_back(static_cast<double>(k));
    auto piece = [pieces](double s) {
        return static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, pieces - 1.0));
    };
    c.position = [points, piece](double s) {
        const std::size_t k = piece(s);
        const double u = s - static_cast<double>(k);
        return VectorXd(points[k] + u * (points[k + 1] - points[k]));
    };
    c.velocity = [points, piece](double s) {
        const std::size_t k = piece(s);
        return VectorXd(points[k + 1] - points[k]);
    };
    return c;
}

VectorXd ParamCurve::derivative(double s) const {
    if (velocity) return velocity(s);
    // Five-point central stencil kept inside the smooth piece containing s.
    double room = std::min(s - a, b - s);
    for (const double bp : breakpoints) room = std::min(room, std::abs(s - bp));
    const double h = std::min(1e-3 * (b - a), 0.45 * room);
    if (!(h > 0.0)) throw std::domain_error("cannot differentiate a curve at a breakpoint");
    return (-position(s + 2 * h) + 8.0 * position(s + h) - 8.0 * position(s - h) + position(s - 2 * h)) / (12.0 * h);
}

double curve_length(const MetricChart& chart, const ParamCurve& curve, int steps) {
    if (steps < 2) throw std::invalid_argument("curve_length needs at least 2 panels");
    if (!curve.position) throw std::invalid_argument("curve without coordinates");
    if (!(curve.b > curve.a)) throw std::invalid_argument("empty parameter interval");
    std::vector<double> cuts;
    for (int k = 0; k <= steps; ++k) cuts.push_back(curve.a + (curve.b - curve.a) * k / steps);
    for (const double bp : curve.breakpoints)
        if (bp > curve.a && bp < curve.b) cuts.push_back(bp);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double x, double y) { return std::abs(x - y) < 1e-14; }),
               cuts.end());
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = cuts[k];
        const double hi = cuts[k + 1];
        for (std::size_t i = 0; i < kNodes.size(); ++i) {
            const double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * kNodes[i];
            const VectorXd p = curve.position(s);
            if (!contains(chart, p, 1e-9)) throw std::domain_error("curve exits the chart domain");
            const VectorXd v = curve.derivative(s);
            total += 0.5 * (hi - lo) * kWeights[i] * std::sqrt(std::max(0.0, v.dot(metric_tensor_at(chart, p) * v)));
        }
    }
    return total;
}

double fiber_diameter(const MetricChart& chart, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("fiber diameter needs t in (0, 1]");
    return std::visit(
        [&](const auto& c) -> double {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConeMetric> || std::is_same_v<T, AnnulusFamily>) {
                throw std::invalid_argument("chart has no designated fiber");
            } else if constexpr (std::is_same_v<T, CheegerNagase>) {
                BaseMetric fiber = BaseMetric::flat_square();
                fiber.tensor = [t, nu = c.nu, nu_prime = c.nu_prime](const VectorXd& y) {
                    const double h = nagase_h(t, y(0), nu, nu_prime);
                    MatrixXd g = MatrixXd::Identity(2, 2);
                    g(1, 1) = h * h;
                    return g;
                };
                return tpow(t, c.nu) * fiber.diameter();
            } else {
                return tpow(t, c.nu) * c.base.diameter();
            }
        },
        chart);
}

LoopFamily standard_loop(const MetricChart& chart) {
    return std::visit(
        [](const auto& c) -> LoopFamily {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, ConeMetric>) {
                const int n = c.base.dimension;
                return [n](double t) {
                    VectorXd from = VectorXd::Constant(n + 1, 0.5);
                    VectorXd to = from;
                    from(0) = to(0) = t;
                    from(1) = 0.0;
                    to(1) = 1.0;
                    return ParamCurve::segment(from, to);
                };
            } else if constexpr (std::is_same_v<T, CheegerNagase>) {
                return [](double t) {
                    VectorXd from(4), to(4);
                    from << t, 0.5, 0.0, 0.0;
                    to << t, 0.5, 0.0, 1.0;
                    return ParamCurve::segment(from, to);
                };
            } else if constexpr (std::is_same_v<T, AnnulusFamily>) {
                return [](double t) {
                    VectorXd from(4), to(4);
                    from << t, 1.0, 2.0, 0.0;
                    to << t, 1.0, 2.0, kTwoPi;
                    return ParamCurve::segment(from, to);
                };
            } else {
                const auto poly = polygon_of(c.base);
                const double theta = std::is_same_v<T, HsiangPati> ? 0.5 : std::numbers::pi;
                return [poly, theta](double t) {
                    std::vector<VectorXd> pts;
                    for (std::size_t k = 0; k <= poly.size(); ++k) {
                        const auto& v = poly[k % poly.size()];
                        VectorXd p(4);
                        p << t, theta, v.x(), v.y();
                        pts.push_back(p);
                    }
                    return ParamCurve::polyline(pts);
                };
            }
        },
        chart);
}

ShrinkFit fit_shrink_exponent(const MetricChart& chart, const LoopFamily& loops, const std::vector<double>& t_samples,
                              int steps) {
    if (t_samples.size() < 3) throw std::invalid_argument("shrink fit needs at least 3 samples");
    const auto [lo, hi] = std::minmax_element(t_samples.begin(), t_samples.end());
    if (!(*lo > 0.0) || *hi > 1.0) throw std::invalid_argument("shrink fit samples must lie in (0, 1]");
    if (*hi == *lo) throw std::invalid_argument("shrink fit samples are all equal");
    if (*hi / *lo < 100.0 * (1.0 - 1e-12)) throw std::invalid_argument("shrink fit samples must span two decades");
    ShrinkFit fit;
    std::vector<double> xs, ys;
    for (const double t : t_samples) {
        const double len = curve_length(chart, loops(t), steps);
        if (!(len > 0.0)) throw std::domain_error("loop has zero length");
        fit.t.push_back(t);
        fit.lengths.push_back(len);
        xs.push_back(std::log(t));
        ys.push_back(std::log(len));
    }
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.exponent = sxy / sxx;
    fit.intercept = my - fit.exponent * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.exponent * xs[i]);
        rss += e * e;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

CnCheck verify_cn_identity(const Rational& nu, const Rational& nu_prime, const std::vector<std::array<double, 3>>& samples) {
    check_exponents(nu);
    if (nu_prime < nu) throw std::invalid_argument("need nu' >= nu");
    CnCheck out;
    for (const auto& [t, r, psi] : samples)
        if (!(t > 0.0 && t <= 1.0) || r < 1.0 || r > 2.0 || psi < 0.0 || psi >= kTwoPi)
            throw std::invalid_argument("sample outside (0, 1] x [1, 2] x [0, 2 pi)");
    if (nu_prime == nu) {
        out.degenerate = true;
        return out;
    }
    const Rational gap = nu_prime - nu;
    for (const auto& [t, r, psi] : samples) {
        if (t == 1.0) {
            ++out.flagged;
            continue;
        }
        const double a = tpow(t, nu);
        const double b = tpow(t, nu_prime);
        const double tg = tpow(t, gap);
        const double s = (r - 1.0) * (1.0 - tg);
        const double h = nagase_h(t, s, nu, nu_prime);
        // Annulus side.
        const double rr = (a - b) * (a - b);
        const double circ = (r - 1.0) * a + (2.0 - r) * b;
        const double pp = circ * circ;
        // Cheeger-Nagase side pulled back: ds = (1 - t^gap) dr, dTheta = 2 pi dpsi.
        const double rr_cn = a * a * (1.0 - tg) * (1.0 - tg);
        const double pp_cn = a * a * h * h * kTwoPi * kTwoPi;
        out.max_deviation = std::max({out.max_deviation, std::abs(rr - rr_cn), std::abs(pp - pp_cn)});
        ++out.evaluated;
    }
    return out;
}

VectorXd annulus_to_cn(const Rational& nu, const Rational& nu_prime, const VectorXd& p) {
    require_dimension(p, 4);
    VectorXd q = p;
    q(2) = (p(2) - 1.0) * (1.0 - tpow(p(0), nu_prime - nu));
    q(3) = kTwoPi * p(3);
    return q;
}

double bilipschitz_ratio(const MetricChart& a, const MetricChart& b, const CoordinateMap& map,
                         const std::vector<ParamCurve>& curves, int steps) {
    if (curves.empty()) throw std::invalid_argument("bilipschitz ratio needs sample curves");
    double worst = 1.0;
    for (const auto& c : curves) {
        // Both sides use finite differences so that the identity map gives exactly 1.
        ParamCurve plain = c;
        plain.velocity = nullptr;
        ParamCurve mapped = plain;
        mapped.position = [&map, pos = c.position](double s) { return map(pos(s)); };
        const double la = curve_length(a, plain, steps);
        const double lb = curve_length(b, mapped, steps);
        if (!(la > 0.0 && lb > 0.0)) throw std::domain_error("degenerate sample curve");
        worst = std::max({worst, la / lb, lb / la});
    }
    return worst;
}

}  // namespace germ::metrics
