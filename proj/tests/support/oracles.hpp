#pragma once

// Slow, deliberately different routes used only by the tests.

#include "hkd/exactgeom.hpp"
#include "hkd/toric.hpp"

#include <random>
#include <vector>

namespace hkd::testing {

struct OffsetMeasures {
    Rational cone;
    Rational total;
    std::vector<Rational> psi_by_facet;
};

// Boundary measures by elementary pieces: every supporting line is cut at all
// crossings, and each piece is tested by probing both sides at a small finite
// offset. Only meaningful off the event levels.
OffsetMeasures finite_offset_measures(const ToricPair& t, const Rational& lambda);

// Area (length in dim 1) by integrating cross-section lengths between the
// critical heights.
Rational slab_area(const SliceRegion& s);

// Lattice polygons with at most 6 vertices and coordinates in 0..5.
std::vector<LatticePolytope> random_polygons(std::size_t n, std::uint64_t seed);

}  // namespace hkd::testing
