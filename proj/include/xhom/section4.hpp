#ifndef XHOM_SECTION4_HPP
#define XHOM_SECTION4_HPP

#include <cstdint>
#include <optional>

#include "xhom/report.hpp"

namespace xhom {

struct Section4Options {
    bool dense = false;                 ///< denser deterministic grids
    std::uint64_t seed = 0;             ///< parameter-draw seed (echoed)
    std::optional<double> tol_override; ///< replaces per-check residual thresholds
};

/// The full reproduction suite for the 2d solvable setting: family
/// classification, tangent maps, complexes, twisted representation,
/// deformation cocycles, the rigidity table, Moser flows and the van Est
/// chain map. Every check lands in the returned report.
RunReport run_section4(const Section4Options& opts = {});

}  // namespace xhom

#endif
