#include "germ/carousel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "germ/errors.hpp"

namespace germ::carousel {

namespace {

using cd = std::complex<double>;
using puiseux::ComplexValue;
using puiseux::Term;

void validate(const LevelConstants& c) {
    if (!(c.alpha > 0.0 && c.beta > 0.0 && c.gamma > 0.0)) throw std::invalid_argument("carousel constants must be positive");
    if (!(c.alpha < c.beta)) throw std::invalid_argument("carousel constants need alpha < beta");
}

void validate(const CarouselConfig& config) {
    if (!(config.epsilon > 0.0 && config.epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1]");
    if (!(config.mu > 0.0)) throw std::invalid_argument("mu must be positive");
    validate(config.defaults);
    for (const auto& c : config.per_level) validate(c);
}

bool same_direction(const PuiseuxBranch& a, const PuiseuxBranch& b) {
    const cd x = tangent_coefficient(a);
    const cd y = tangent_coefficient(b);
    return std::abs(x - y) <= 1e-7 * std::max({1.0, std::abs(x), std::abs(y)});
}

PuiseuxBranch truncated_below(const PuiseuxBranch& b, const Rational& e) {
    PuiseuxBranch out = b;
    out.terms.clear();
    for (const auto& t : b.terms)
        if (t.exponent < e) out.terms.push_back(t);
    out.truncation_order = e;
    out.next_exponent = e;
    out.residual_valuation = e;
    return out;
}

Rational contact(const PuiseuxBranch& a, const PuiseuxBranch& b) {
    const ExtendedRational e = puiseux::branch_distance_exponent(a, b);
    if (e.kind() != ExtendedRational::Kind::Finite) throw std::invalid_argument("coincident branches in a carousel");
    return e.value();
}

// Hole boundaries belong to the enclosing band.
constexpr double kHoleTie = 1.0 - 1e-9;

double power(double r, const Rational& e) { return std::pow(r, e.to_double()); }

class Builder {
public:
    Builder(CarouselSpec& spec, const CarouselConfig& config) : spec_(spec), config_(config) {}

    void run() {
        const auto n = spec_.roots.size();
        contact_.assign(n, std::vector<Rational>(n, Rational(0)));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b)
                contact_[a][b] = contact_[b][a] = contact(spec_.roots[a].series, spec_.roots[b].series);
        std::vector<int> all(n);
        for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
        build(all, -1, 1);
        assign_orbits();
        emit_regions();
    }

private:
    int build(const std::vector<int>& roots, int parent, int depth) {
        const int id = static_cast<int>(spec_.nodes.size());
        spec_.nodes.emplace_back();
        ClusterNode node;
        node.parent = parent;
        node.depth = depth;
        node.roots = roots;
        if (roots.size() == 1) {
            node.leaf = true;
            node.exponent = parent < 0 ? Rational(1) : spec_.nodes[static_cast<std::size_t>(parent)].exponent;
            node.approximant = spec_.roots[static_cast<std::size_t>(roots.front())].series;
            node.constants = parent < 0 ? config_.at_level(depth) : spec_.nodes[static_cast<std::size_t>(parent)].constants;
            spec_.nodes[static_cast<std::size_t>(id)] = std::move(node);
            return id;
        }
        Rational e = contact_[static_cast<std::size_t>(roots[0])][static_cast<std::size_t>(roots[1])];
        for (std::size_t a = 0; a < roots.size(); ++a)
            for (std::size_t b = a + 1; b < roots.size(); ++b)
                e = std::min(e, contact_[static_cast<std::size_t>(roots[a])][static_cast<std::size_t>(roots[b])]);
        node.exponent = e;
        node.approximant = truncated_below(spec_.roots[static_cast<std::size_t>(roots.front())].series, e);
        node.constants = config_.at_level(depth);
        spec_.nodes[static_cast<std::size_t>(id)] = node;

        // Contact above e is an equivalence relation on the cluster.
        std::vector<std::vector<int>> parts;
        for (const int r : roots) {
            bool placed = false;
            for (auto& part : parts) {
                if (contact_[static_cast<std::size_t>(part.front())][static_cast<std::size_t>(r)] > e) {
                    part.push_back(r);
                    placed = true;
                    break;
                }
            }
            if (!placed) parts.push_back({r});
        }
        std::vector<int> children;
        for (const auto& part : parts) children.push_back(build(part, id, depth + 1));
        spec_.nodes[static_cast<std::size_t>(id)].children = std::move(children);
        return id;
    }

    // Index of the root obtained by x^{1/N} -> zeta x^{1/N}.
    int shifted(int r) const {
        const auto& root = spec_.roots[static_cast<std::size_t>(r)];
        const long n = spec_.approximants[static_cast<std::size_t>(root.branch)].conjugates;
        return first_root_[static_cast<std::size_t>(root.branch)] + static_cast<int>((root.conjugate + 1) % n);
    }

    void assign_orbits() {
        first_root_.assign(spec_.approximants.size(), 0);
        int offset = 0;
        for (std::size_t c = 0; c < spec_.approximants.size(); ++c) {
            first_root_[c] = offset;
            offset += static_cast<int>(spec_.approximants[c].conjugates);
        }
        std::map<std::vector<int>, int> by_roots;
        for (std::size_t i = 0; i < spec_.nodes.size(); ++i) {
            auto key = spec_.nodes[i].roots;
            std::sort(key.begin(), key.end());
            by_roots[key] = static_cast<int>(i);
        }
        preorder(0, by_roots);
    }

    void preorder(int id, const std::map<std::vector<int>, int>& by_roots) {
        auto& node = spec_.nodes[static_cast<std::size_t>(id)];
        if (node.orbit < 0) {
            const int orbit = static_cast<int>(spec_.orbits.size());
            Orbit o;
            o.representative = id;
            o.parent = node.parent < 0 ? -1 : spec_.nodes[static_cast<std::size_t>(node.parent)].orbit;
            o.depth = node.depth;
            o.leaf = node.leaf;
            o.exponent = node.exponent;
            std::vector<int> current = node.roots;
            for (;;) {
                std::vector<int> key = current;
                std::sort(key.begin(), key.end());
                const auto it = by_roots.find(key);
                if (it == by_roots.end()) throw std::logic_error("cluster tree is not invariant under the monodromy");
                auto& member = spec_.nodes[static_cast<std::size_t>(it->second)];
                if (member.orbit == orbit) break;
                member.orbit = orbit;
                o.nodes.push_back(it->second);
                for (auto& r : current) r = shifted(r);
            }
            std::sort(o.nodes.begin(), o.nodes.end());
            spec_.orbits.push_back(std::move(o));
        }
        const auto children = spec_.nodes[static_cast<std::size_t>(id)].children;
        for (const int c : children) preorder(c, by_roots);
    }

    void emit_regions() {
        const auto count = spec_.orbits.size();
        spec_.orbit_regions_omega.assign(count, -1);
        spec_.orbit_regions_upsilon.assign(count, -1);
        spec_.orbit_regions_lambda.assign(count, -1);
        std::map<int, int> internal_per_depth;
        for (const auto& o : spec_.orbits)
            if (!o.leaf) ++internal_per_depth[o.depth];
        std::map<int, int> seen_per_depth;
        int lambda_index = 0;
        auto add = [&](Region r) {
            spec_.regions.push_back(std::move(r));
            return static_cast<int>(spec_.regions.size()) - 1;
        };
        for (std::size_t i = 0; i < count; ++i) {
            const Orbit& o = spec_.orbits[i];
            const ClusterNode& rep = spec_.nodes[static_cast<std::size_t>(o.representative)];
            const int orbit = static_cast<int>(i);
            if (o.leaf) {
                Region lam;
                lam.kind = RegionKind::Lambda;
                lam.level = ++lambda_index;
                lam.nu = o.exponent;
                lam.orbit = orbit;
                lam.whole_neighborhood = rep.parent < 0;
                lam.name = "Lambda_" + std::to_string(lam.level);
                lam.approximant = rep.approximant;
                spec_.orbit_regions_lambda[i] = add(std::move(lam));
                continue;
            }
            std::string suffix = std::to_string(o.depth);
            if (internal_per_depth[o.depth] > 1) suffix += "." + std::to_string(++seen_per_depth[o.depth]);
            const Rational outer = o.parent < 0 ? Rational(1) : spec_.orbits[static_cast<std::size_t>(o.parent)].exponent;

            Region omega;
            omega.kind = RegionKind::Omega;
            omega.level = o.depth;
            omega.nu = o.exponent;
            omega.nu_outer = outer;
            omega.orbit = orbit;
            omega.name = "Omega_" + suffix;
            omega.approximant = rep.approximant;
            spec_.orbit_regions_omega[i] = add(std::move(omega));

            Region upsilon;
            upsilon.kind = RegionKind::Upsilon;
            upsilon.level = o.depth;
            upsilon.nu = o.exponent;
            upsilon.orbit = orbit;
            upsilon.name = "Upsilon_" + suffix;
            upsilon.approximant = rep.approximant;
            spec_.orbit_regions_upsilon[i] = add(std::move(upsilon));

            Region lam;
            lam.kind = RegionKind::Lambda;
            lam.level = ++lambda_index;
            lam.nu = o.exponent;
            lam.orbit = orbit;
            lam.name = "Lambda_" + std::to_string(lam.level);
            lam.approximant = rep.approximant;
            spec_.orbit_regions_lambda[i] = add(std::move(lam));
        }
    }

    CarouselSpec& spec_;
    const CarouselConfig& config_;
    std::vector<std::vector<Rational>> contact_;
    std::vector<int> first_root_;
};

Region outer_region() {
    Region r;
    r.kind = RegionKind::OuterA;
    r.name = "OuterA";
    return r;
}

}  // namespace

LevelConstants CarouselConfig::at_level(int depth) const {
    if (depth >= 1 && static_cast<std::size_t>(depth) <= per_level.size()) return per_level[static_cast<std::size_t>(depth - 1)];
    return defaults;
}

std::string to_string(RegionKind kind) {
    switch (kind) {
        case RegionKind::Upsilon: return "Upsilon";
        case RegionKind::Omega: return "Omega";
        case RegionKind::Lambda: return "Lambda";
        case RegionKind::OuterA: return "OuterA";
    }
    return "unknown";
}

std::complex<double> tangent_coefficient(const PuiseuxBranch& b) {
    if (b.terms.empty()) return {0.0, 0.0};
    const Term& lead = b.terms.front();
    if (lead.exponent < Rational(1))
        throw CapabilityError("branch with leading exponent " + lead.exponent.str() + " < 1 is tangent to the z2-axis");
    if (lead.exponent == Rational(1)) return lead.coefficient.to_complex();
    return {0.0, 0.0};
}

CarouselSpec build_carousel(const std::vector<PuiseuxBranch>& branches, const CarouselConfig& config) {
    if (branches.empty()) throw std::invalid_argument("carousel needs at least one branch");
    validate(config);
    for (const auto& b : branches) {
        if (b.conjugates < 1) throw std::invalid_argument("conjugacy class size must be positive");
        if (!same_direction(branches.front(), b)) throw std::invalid_argument("branches have different tangent directions");
    }
    CarouselSpec spec;
    spec.epsilon = config.epsilon;
    spec.mu = config.mu;
    spec.approximants = branches;
    spec.tangent = tangent_coefficient(branches.front());
    const auto& front = branches.front();
    spec.tangent_exact = front.terms.empty() || front.terms.front().exponent > Rational(1) ||
                         front.terms.front().coefficient.is_exact();
    if (spec.tangent_exact && !front.terms.empty() && front.terms.front().exponent == Rational(1))
        spec.tangent_value = front.terms.front().coefficient.exact();
    for (std::size_t c = 0; c < branches.size(); ++c)
        for (long k = 0; k < branches[c].conjugates; ++k)
            spec.roots.push_back({static_cast<int>(c), k, puiseux::conjugate(branches[c], k)});
    Builder(spec, config).run();
    return spec;
}

std::vector<CarouselSpec> build_carousels(const std::vector<PuiseuxBranch>& branches, const CarouselConfig& config) {
    std::vector<std::vector<PuiseuxBranch>> groups;
    for (const auto& b : branches) {
        bool placed = false;
        for (auto& g : groups) {
            if (same_direction(g.front(), b)) {
                g.push_back(b);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({b});
    }
    std::vector<CarouselSpec> out;
    for (const auto& g : groups) out.push_back(build_carousel(g, config));
    return out;
}

Region classify_point(const CarouselSpec& spec, std::complex<double> x, std::complex<double> y) {
    const double r = std::abs(x);
    if (r == 0.0) throw std::invalid_argument("x = 0 is the cone apex");
    if (r > spec.epsilon || std::abs(y - spec.tangent * x) > spec.mu * r) return outer_region();
    int id = 0;
    for (;;) {
        const ClusterNode& node = spec.nodes[static_cast<std::size_t>(id)];
        if (node.leaf) return spec.regions[static_cast<std::size_t>(spec.orbit_regions_lambda[static_cast<std::size_t>(node.orbit)])];
        const double s = power(r, node.exponent);
        int next = -1;
        for (const int c : node.children) {
            const auto& child = spec.nodes[static_cast<std::size_t>(c)];
            if (std::abs(y - child.approximant.evaluate(x)) < node.constants.gamma * s * kHoleTie) {
                next = c;
                break;
            }
        }
        if (next >= 0) {
            id = next;
            continue;
        }
        const auto o = static_cast<std::size_t>(node.orbit);
        const double d = std::abs(y - node.approximant.evaluate(x));
        if (d > node.constants.beta * s) return spec.regions[static_cast<std::size_t>(spec.orbit_regions_omega[o])];
        if (d >= node.constants.alpha * s) return spec.regions[static_cast<std::size_t>(spec.orbit_regions_upsilon[o])];
        return spec.regions[static_cast<std::size_t>(spec.orbit_regions_lambda[o])];
    }
}

bool upsilon_inequalities(const CarouselSpec& spec, int node, std::complex<double> x, std::complex<double> y) {
    if (node < 0 || static_cast<std::size_t>(node) >= spec.nodes.size()) throw std::out_of_range("no such cluster node");
    const ClusterNode& n = spec.nodes[static_cast<std::size_t>(node)];
    if (n.leaf) throw std::invalid_argument("leaves carry no band");
    const double s = power(std::abs(x), n.exponent);
    const double d = std::abs(y - n.approximant.evaluate(x));
    return n.constants.alpha * s <= d && d <= n.constants.beta * s && d >= n.constants.gamma * s;
}

RegionMetric region_metric_type(const Region& region) {
    RegionMetric m;
    m.nu = region.nu;
    switch (region.kind) {
        case RegionKind::Upsilon:
            m.kind = ChartKind::MappingTorusCone;
            break;
        case RegionKind::Omega:
            m.kind = ChartKind::CheegerNagase;
            m.nu = region.nu_outer.value_or(Rational(1));
            m.nu_prime = region.nu;
            break;
        case RegionKind::Lambda:
            m.kind = ChartKind::MappingTorusCone;
            m.over_disk = true;
            break;
        case RegionKind::OuterA:
            m.kind = ChartKind::Cone;
            m.nu = Rational(1);
            break;
    }
    if (m.rate() == Rational(1)) {
        m.kind = ChartKind::Cone;
        m.conical = true;
    }
    return m;
}

BranchLocation locate_branch(const CarouselSpec& spec, const PuiseuxBranch& branch) {
    BranchLocation loc;
    if (!same_direction(spec.approximants.front(), branch)) return loc;
    loc.inside = true;
    int id = 0;
    for (;;) {
        const ClusterNode& node = spec.nodes[static_cast<std::size_t>(id)];
        if (node.leaf) {
            const int host = node.parent < 0 ? id : node.parent;
            const auto& h = spec.nodes[static_cast<std::size_t>(host)];
            loc.orbit = h.orbit;
            loc.nu = h.parent < 0 && h.leaf ? Rational(1) : h.exponent;
            return loc;
        }
        Rational best(0);
        int best_root = -1;
        for (const int r : node.roots) {
            const ExtendedRational c = puiseux::branch_distance_exponent(branch, spec.roots[static_cast<std::size_t>(r)].series);
            if (c.kind() != ExtendedRational::Kind::Finite) {
                best_root = r;
                best = node.exponent + Rational(1);
                break;
            }
            if (best_root < 0 || c.value() > best) {
                best = c.value();
                best_root = r;
            }
        }
        if (best == node.exponent) {
            loc.orbit = node.orbit;
            loc.nu = node.exponent;
            return loc;
        }
        if (best < node.exponent) {
            // Leaves the cluster before its split: the enclosing level hosts it.
            if (node.parent >= 0) {
                const auto& p = spec.nodes[static_cast<std::size_t>(node.parent)];
                loc.orbit = p.orbit;
                loc.nu = p.exponent;
            }
            return loc;
        }
        int next = -1;
        for (const int c : node.children) {
            const auto& rs = spec.nodes[static_cast<std::size_t>(c)].roots;
            if (std::find(rs.begin(), rs.end(), best_root) != rs.end()) next = c;
        }
        id = next;
    }
}

}  // namespace germ::carousel
