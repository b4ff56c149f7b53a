#include <algorithm>
#include <stdexcept>

#include "germ/puiseux.hpp"

namespace germ::puiseux {

namespace {

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return (a.i - o.i) * (b.j - o.j) - (a.j - o.j) * (b.i - o.i);
}

}  // namespace

NewtonPolygon newton_polygon(const MPoly& g) {
    if (g.depends_on(poly::Var::Z3)) throw std::invalid_argument("Newton polygon needs a polynomial in z1, z2");
    if (g.is_constant()) throw std::invalid_argument("Newton polygon of a constant");
    if (!g.constant_term().is_zero()) throw std::invalid_argument("polynomial does not vanish at the origin");
    NewtonPolygon poly;
    for (const auto& [e, c] : g.terms()) poly.support.push_back({static_cast<long>(e[0]), static_cast<long>(e[1])});
    std::sort(poly.support.begin(), poly.support.end());

    std::vector<LatticePoint> hull;
    for (const auto& p : poly.support) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
        const LatticePoint& u = hull[k];
        const LatticePoint& l = hull[k + 1];
        if (l.j >= u.j) break;
        PolygonEdge e{u, l, Rational(Integer(l.j - u.j), Integer(l.i - u.i)),
                      Rational(Integer(l.i - u.i), Integer(u.j - l.j))};
        poly.edges.push_back(e);
    }
    std::reverse(poly.edges.begin(), poly.edges.end());
    return poly;
}

}  // namespace germ::puiseux
