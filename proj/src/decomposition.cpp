#include "germ/decomposition.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace germ::decomposition {

namespace {

class GraphBuilder {
public:
    int add(Piece p) {
        g_.pieces.push_back(std::move(p));
        g_.boundary_order.emplace_back();
        return static_cast<int>(g_.pieces.size()) - 1;
    }

    void connect(int a, int b) {
        g_.edges.push_back({a, b});
        g_.boundary_order[static_cast<std::size_t>(a)].push_back(b);
        g_.boundary_order[static_cast<std::size_t>(b)].push_back(a);
    }

    Piece& piece(int i) { return g_.pieces[static_cast<std::size_t>(i)]; }
    DecompositionGraph take() { return std::move(g_); }
    DecompositionGraph& graph() { return g_; }

private:
    DecompositionGraph g_;
};

Piece torus(const Rational& nu, const Rational& nu_prime, std::string provenance) {
    Piece p;
    p.kind = PieceKind::ThickenedTorusCone;
    p.nu = nu;
    p.nu_prime = nu_prime;
    p.provenance = std::move(provenance);
    p.chart = metrics::cheeger_nagase(nu, nu_prime);
    return p;
}

void append(std::string& provenance, const std::string& more) {
    if (!provenance.empty()) provenance += ", ";
    provenance += more;
}

std::string dot_label(const Piece& p) {
    std::string label = to_string(p.kind);
    if (p.kind == PieceKind::ThickenedTorusCone) {
        label += " nu=" + p.nu.str() + " nu'=" + p.nu_prime->str();
    } else if (p.kind == PieceKind::TubularCone && p.transversal) {
        label += " d=" + std::to_string(p.transversal->d) + " m=" + std::to_string(p.transversal->m) + " nu=" + p.nu.str();
    } else {
        label += " nu=" + p.nu.str();
    }
    return label;
}

}  // namespace

std::string to_string(PieceKind kind) {
    switch (kind) {
        case PieceKind::SeifertCone: return "SeifertCone";
        case PieceKind::ThickenedTorusCone: return "ThickenedTorusCone";
        case PieceKind::MappingTorusCone: return "MappingTorusCone";
        case PieceKind::TubularCone: return "TubularCone";
    }
    return "unknown";
}

PieceKind piece_kind_from_string(const std::string& name) {
    for (const auto k : {PieceKind::SeifertCone, PieceKind::ThickenedTorusCone, PieceKind::MappingTorusCone,
                         PieceKind::TubularCone})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown piece kind '" + name + "'");
}

Rational host_rate(const AssemblyInput& input, int carousel, int orbit) {
    if (carousel < 0 || orbit < 0) return Rational(1);
    const auto& c = input.carousels.at(static_cast<std::size_t>(carousel));
    const auto& o = c.orbits.at(static_cast<std::size_t>(orbit));
    if (o.leaf) {
        if (o.parent < 0) return Rational(1);
        return c.orbits.at(static_cast<std::size_t>(o.parent)).exponent;
    }
    return o.exponent;
}

DecompositionGraph assemble(const AssemblyInput& input) {
    GraphBuilder b;
    Piece outer;
    outer.kind = PieceKind::SeifertCone;
    outer.provenance = "outer cone";
    outer.chart = metrics::cone();
    const int seifert = b.add(outer);

    // mapping-torus piece of each internal orbit, -1 for leaves.
    std::vector<std::vector<int>> orbit_piece(input.carousels.size());
    for (std::size_t ci = 0; ci < input.carousels.size(); ++ci) {
        const auto& c = input.carousels[ci];
        const std::string tag = "carousel " + std::to_string(ci) + " ";
        orbit_piece[ci].assign(c.orbits.size(), -1);
        for (std::size_t oi = 0; oi < c.orbits.size(); ++oi) {
            const auto& o = c.orbits[oi];
            const int host = o.parent < 0 ? seifert : orbit_piece[ci][static_cast<std::size_t>(o.parent)];
            if (o.leaf) {
                const auto& lam = c.regions[static_cast<std::size_t>(c.orbit_regions_lambda[oi])];
                append(b.piece(host).provenance, tag + lam.name);
                continue;
            }
            const auto& omega = c.regions[static_cast<std::size_t>(c.orbit_regions_omega[oi])];
            const auto& upsilon = c.regions[static_cast<std::size_t>(c.orbit_regions_upsilon[oi])];
            const auto& lam = c.regions[static_cast<std::size_t>(c.orbit_regions_lambda[oi])];
            const Rational nu_outer = omega.nu_outer.value_or(Rational(1));
            const int t = b.add(torus(nu_outer, o.exponent, tag + omega.name));
            Piece m;
            m.kind = PieceKind::MappingTorusCone;
            m.nu = o.exponent;
            m.provenance = tag + upsilon.name + ", " + tag + lam.name;
            m.chart = metrics::mapping_torus_cone(o.exponent);
            const int mp = b.add(std::move(m));
            orbit_piece[ci][oi] = mp;
            b.connect(host, t);
            b.connect(t, mp);
        }
    }

    for (std::size_t ti = 0; ti < input.tubes.size(); ++ti) {
        const auto& tube = input.tubes[ti];
        if (!tube.transversal) throw std::invalid_argument("singular branch " + tube.branch_id + " has no transversal data");
        if (tube.circles < 1 || tube.circle_degree < 1) throw std::invalid_argument("circle data must be positive");
        int host = seifert;
        if (tube.carousel >= 0) {
            if (static_cast<std::size_t>(tube.carousel) >= input.carousels.size())
                throw std::invalid_argument("tube refers to a missing carousel");
            const auto& c = input.carousels[static_cast<std::size_t>(tube.carousel)];
            if (tube.host_orbit >= 0) {
                if (static_cast<std::size_t>(tube.host_orbit) >= c.orbits.size())
                    throw std::invalid_argument("tube refers to a missing orbit");
                int orbit = tube.host_orbit;
                if (c.orbits[static_cast<std::size_t>(orbit)].leaf) orbit = c.orbits[static_cast<std::size_t>(orbit)].parent;
                if (orbit >= 0) host = orbit_piece[static_cast<std::size_t>(tube.carousel)][static_cast<std::size_t>(orbit)];
            }
        } else if (tube.host_orbit >= 0) {
            throw std::invalid_argument("tube has an orbit but no carousel");
        }
        const Rational nu_host = b.piece(host).rate();
        if (!(tube.nu_prime > nu_host))
            throw std::invalid_argument("tube rate " + tube.nu_prime.str() + " must exceed its host rate " + nu_host.str());
        const int t = b.add(torus(nu_host, tube.nu_prime, "tube " + tube.branch_id));
        Piece p;
        p.kind = PieceKind::TubularCone;
        p.nu = tube.nu_prime;
        p.transversal = tube.transversal;
        p.provenance = "singular branch " + tube.branch_id;
        p.chart = metrics::hsiang_pati(tube.nu_prime);
        const int tp = b.add(std::move(p));
        b.connect(host, t);
        b.connect(t, tp);
        for (int k = 0; k < tube.circles; ++k)
            b.graph().circles.push_back({static_cast<int>(ti), k, tube.circle_degree, tp});
    }
    return b.take();
}

std::vector<CircleClass> glue_circles(const std::vector<MarkedCircle>& circles) {
    std::map<int, CircleClass> classes;
    for (const auto& c : circles) {
        if (c.degree < 1) throw std::invalid_argument("circle degree must be >= 1");
        auto [it, fresh] = classes.try_emplace(c.branch, CircleClass{c.branch, c.degree, {}});
        if (!fresh && it->second.degree != c.degree)
            throw std::invalid_argument("circles over branch " + std::to_string(c.branch) + " have degrees " +
                                        std::to_string(it->second.degree) + " and " + std::to_string(c.degree));
        it->second.sheets.push_back(c.sheet);
    }
    std::vector<CircleClass> out;
    for (auto& [branch, cls] : classes) out.push_back(std::move(cls));
    return out;
}

HJFraction hj_continued_fraction(long n, long q) {
    if (!(n > q && q >= 1)) throw std::invalid_argument("need n > q >= 1");
    if (std::gcd(n, q) != 1) throw std::invalid_argument("n and q must be coprime");
    HJFraction out{n, q, {}};
    long a = n;
    long b = q;
    while (b != 0) {
        // a/b = c - r/b with c = ceil(a/b), then continue with b/r.
        const long c = (a + b - 1) / b;
        out.entries.push_back(c);
        const long r = c * b - a;
        a = b;
        b = r;
    }
    return out;
}

Rational evaluate_hj(const std::vector<long>& entries) {
    if (entries.empty()) throw std::invalid_argument("empty continued fraction");
    Rational value(entries.back());
    for (auto it = entries.rbegin() + 1; it != entries.rend(); ++it) value = Rational(*it) - value.inverse();
    return value;
}

Summary summary(const DecompositionGraph& graph) {
    Summary s;
    for (std::size_t i = 0; i < graph.pieces.size(); ++i) {
        const Piece& p = graph.pieces[i];
        ++s.counts[p.kind];
        s.flags.push_back({static_cast<int>(i), p.kind, p.conical(), p.rate()});
        if (p.conical()) {
            ++s.conical_count;
        } else if (!s.non_conical_rate || p.rate() < *s.non_conical_rate) {
            s.non_conical_rate = p.rate();
        }
    }
    return s;
}

std::string to_dot(const DecompositionGraph& graph) {
    if (graph.empty()) return "graph G {}\n";
    std::ostringstream out;
    out << "graph G {\n";
    for (std::size_t i = 0; i < graph.pieces.size(); ++i)
        out << "  n" << i << " [label=\"" << dot_label(graph.pieces[i]) << "\"];\n";
    for (const auto& e : graph.edges) out << "  n" << e.a << " -- n" << e.b << ";\n";
    out << "}\n";
    return out.str();
}

std::string check_invariants(const DecompositionGraph& graph) {
    const auto n = graph.pieces.size();
    if (n == 0) return {};
    std::vector<bool> seen(n, false);
    std::queue<int> todo;
    todo.push(0);
    seen[0] = true;
    while (!todo.empty()) {
        const int v = todo.front();
        todo.pop();
        for (const int w : graph.boundary_order[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                todo.push(w);
            }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return "graph is not connected";
    for (std::size_t i = 0; i < n; ++i) {
        const Piece& p = graph.pieces[i];
        const auto& nb = graph.boundary_order[i];
        if (p.kind == PieceKind::SeifertCone && p.nu != Rational(1)) return "SeifertCone with nu != 1";
        if (p.kind == PieceKind::ThickenedTorusCone) {
            if (nb.size() != 2) return "ThickenedTorusCone " + std::to_string(i) + " has degree " + std::to_string(nb.size());
            if (!(p.nu_prime && *p.nu_prime > p.nu)) return "ThickenedTorusCone without nu' > nu";
            continue;
        }
        if (p.kind == PieceKind::TubularCone && !p.transversal) return "TubularCone without transversal data";
        for (const int w : nb)
            if (graph.pieces[static_cast<std::size_t>(w)].kind != PieceKind::ThickenedTorusCone)
                return "pieces " + std::to_string(i) + " and " + std::to_string(w) + " are glued without a thickened torus";
    }
    return {};
}

}  // namespace germ::decomposition
