#pragma once

#include "hkd/rational.hpp"

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace hkd {

struct GeometryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// {x : <x, normal> >= -offset}, normal primitive.
struct Halfspace {
    LatticeVector normal;
    std::int64_t offset = 0;

    std::int64_t eval(const LatticeVector& x) const;  // <x, normal> + offset
    friend bool operator==(const Halfspace&, const Halfspace&) = default;
};

// Full-dimensional lattice polytope with both representations. Dimension 0 is
// the single point used for the facet pairs of segments.
class LatticePolytope {
public:
    int dim() const { return dim_; }
    const std::vector<LatticeVector>& vertices() const { return vertices_; }
    const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
    // indices into vertices() lying on each halfspace boundary
    const std::vector<std::vector<std::size_t>>& facet_vertices() const { return facet_vertices_; }
    // max over vertices of <v, normal_i>; the min is -offset_i
    std::int64_t max_along(std::size_t facet) const { return max_along_[facet]; }

    bool contains(const LatticeVector& x) const;

    static LatticePolytope point(int ambient_dim = 0);
    static LatticePolytope from_vertices(const std::vector<LatticeVector>& points, int dim);
    static LatticePolytope from_halfspaces(const std::vector<Halfspace>& hs, int dim);
    // P x Q with the facets of P (lifted) listed before those of Q.
    static LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q);
    // Same polytope with its halfspaces listed in the given order (a permutation).
    LatticePolytope with_facet_order(const std::vector<std::size_t>& order) const;
    LatticePolytope translated(const LatticeVector& t) const;

private:
    void finish();  // fills facet_vertices_/max_along_ and checks consistency

    int dim_ = 0;
    std::vector<LatticeVector> vertices_;
    std::vector<Halfspace> halfspaces_;
    std::vector<std::vector<std::size_t>> facet_vertices_;
    std::vector<std::int64_t> max_along_;
};

struct PolytopeSpec {
    enum class Kind { Vertices, Halfspaces } kind = Kind::Vertices;
    int dim = 2;
    std::vector<LatticeVector> vertices;
    std::vector<Halfspace> halfspaces;
};

// Vertex input yields halfspaces sorted by decreasing normal (lexicographic);
// halfspace input keeps the given order, dropping redundant inequalities.
LatticePolytope make_polytope(const PolytopeSpec& spec);

struct RationalHalfspace {
    LatticeVector normal;
    Rational offset;  // {x : <x, normal> >= -offset}
};

struct RationalPolytope {
    int dim = 0;
    Rational scale;
    RationalVector translation;
    std::vector<RationalVector> vertices;
    std::vector<RationalHalfspace> halfspaces;
    bool degenerate = false;  // s = 0: the single point `translation`

    bool contains(const RationalVector& x) const;
};

RationalPolytope dilate_translate(const LatticePolytope& p, const Rational& s, const RationalVector& t);

std::vector<LatticeVector> lattice_points(const RationalPolytope& q);
std::vector<LatticeVector> lattice_points(const LatticePolytope& p);
// #L(mP) without materializing the points
std::int64_t count_lattice_points(const LatticePolytope& p, std::int64_t m);

// ---------------------------------------------------------------------------
// Slices of the cone over P with the translated cones removed.

enum class TagKind { ConeBoundary, TranslateFacet };

struct PieceTag {
    TagKind kind = TagKind::ConeBoundary;
    std::size_t facet = 0;
    Rational mu;          // sigma_F level of the supporting line; 0 for cone pieces
    LatticeVector translate;  // lexicographically first u whose hole has this facet line
};

struct BoundaryPiece {
    RationalVector a;  // endpoints; a == b for points (dim 1)
    RationalVector b;
    Rational rvol;
    LatticeVector line_normal;  // oriented normal of the supporting line
    int region_side = 0;        // +1: the region lies on the line_normal side
    std::vector<PieceTag> tags; // more than one only at event levels
};

struct Hole {
    LatticeVector u;
    RationalPolytope shape;
};

struct SliceRegion {
    Rational level;
    RationalPolytope outer;
    std::vector<Hole> holes;
    std::vector<BoundaryPiece> pieces;
    bool ambiguous = false;  // some supporting line carries labels of two facets
};

SliceRegion slice_region(const LatticePolytope& p, const Rational& lambda);
// Same, with the holes processed in the given order of lattice points (used to
// check that the result does not depend on it).
SliceRegion slice_region(const LatticePolytope& p, const Rational& lambda,
                         const std::vector<LatticeVector>& hole_order);

Rational region_volume(const SliceRegion& s);
// A piece counts if any of its tags passes.
Rational boundary_measure(const SliceRegion& s, const std::function<bool(const PieceTag&)>& filter);

// Relative volume of the segment p -> q: q - p = s*w with w primitive.
Rational segment_rvol(const RationalVector& p, const RationalVector& q);

// Membership in outer minus the closed holes.
bool in_region(const SliceRegion& s, const RationalVector& x);

}  // namespace hkd
