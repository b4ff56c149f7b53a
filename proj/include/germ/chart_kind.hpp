#pragma once

#include <cstdint>
#include <string>

namespace germ {

/// The five model metrics.
enum class ChartKind : std::uint8_t { Cone, HsiangPati, CheegerNagase, AnnulusFamily, MappingTorusCone };

inline std::string to_string(ChartKind k) {
    switch (k) {
        case ChartKind::Cone: return "cone";
        case ChartKind::HsiangPati: return "hsiang_pati";
        case ChartKind::CheegerNagase: return "cheeger_nagase";
        case ChartKind::AnnulusFamily: return "annulus_family";
        case ChartKind::MappingTorusCone: return "mapping_torus_cone";
    }
    return "unknown";
}

}  // namespace germ
