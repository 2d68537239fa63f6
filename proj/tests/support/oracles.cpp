#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hkd::testing {
namespace {

const Rational kEps(1, Integer(1) << 50);

struct Label {
    std::size_t facet;
    Rational mu;
    bool operator<(const Label& o) const { return std::tie(facet, mu) < std::tie(o.facet, o.mu); }
};

// <x, n> = c with n lex-positive
struct LineKey {
    LatticeVector n;
    Rational c;
    bool operator<(const LineKey& o) const { return std::tie(n, c) < std::tie(o.n, o.c); }
};

Rational dot(const RationalVector& x, const LatticeVector& n) {
    Rational s = 0;
    for (std::size_t i = 0; i < n.size(); ++i) s += x[i] * n[i];
    return s;
}

// all supporting lines of the objects with their (facet, mu) labels
std::map<LineKey, std::set<Label>> lines_of(const ToricPair& t, const SliceRegion& s) {
    std::map<LineKey, std::set<Label>> out;
    auto add = [&](const RationalPolytope& obj) {
        for (std::size_t i = 0; i < obj.halfspaces.size(); ++i) {
            const auto& h = obj.halfspaces[i];
            // <x, n> >= -offset; the facet level is mu = a_F lambda - offset
            Rational mu = Rational(t.form(i).offset) * s.level - h.offset;
            LineKey key{h.normal, -h.offset};
            if (key.n < LatticeVector(key.n.size(), 0)) {
                for (auto& v : key.n) v = -v;
                key.c = -key.c;
            }
            out[key].insert({i, mu});
        }
    };
    add(s.outer);
    for (const auto& h : s.holes)
        if (!h.shape.degenerate) add(h.shape);
    return out;
}

void credit(OffsetMeasures& m, const std::set<Label>& labels, const Rational& len) {
    m.total += len;
    bool cone = false;
    for (const auto& l : labels) {
        if (l.mu == 0) cone = true;
        else m.psi_by_facet[l.facet] += len;
    }
    if (cone) m.cone += len;
}

}  // namespace

OffsetMeasures finite_offset_measures(const ToricPair& t, const Rational& lambda) {
    SliceRegion s = slice_region(t.polytope(), lambda);
    OffsetMeasures m;
    m.psi_by_facet.assign(t.facet_count(), Rational(0));
    auto lines = lines_of(t, s);

    if (t.polytope().dim() == 1) {
        for (const auto& [key, labels] : lines) {
            RationalVector x{key.c / key.n[0]};
            bool left = in_region(s, {x[0] - kEps});
            bool right = in_region(s, {x[0] + kEps});
            if (left != right) credit(m, labels, Rational(1));
        }
        return m;
    }

    for (const auto& [key, labels] : lines) {
        const LatticeVector& n = key.n;
        LatticeVector w{-n[1], n[0]};
        Rational nn = Rational(n[0] * n[0] + n[1] * n[1]);
        RationalVector x0{key.c * n[0] / nn, key.c * n[1] / nn};
        // the part of the line inside the closed outer polygon
        bool empty = false;
        std::optional<Rational> lo, hi;
        for (const auto& h : s.outer.halfspaces) {
            Rational a = Rational(w[0] * h.normal[0] + w[1] * h.normal[1]);
            Rational b = -h.offset - dot(x0, h.normal);  // a t >= b
            if (a == 0) {
                if (b > 0) empty = true;
            } else if (a > 0) {
                Rational v = b / a;
                if (!lo || v > *lo) lo = v;
            } else {
                Rational v = b / a;
                if (!hi || v < *hi) hi = v;
            }
        }
        if (empty || !lo || !hi || *lo >= *hi) continue;
        std::vector<Rational> cuts{*lo, *hi};
        for (const auto& [other, _] : lines) {
            Rational a = Rational(w[0] * other.n[0] + w[1] * other.n[1]);
            if (a == 0) continue;
            Rational tt = (other.c - dot(x0, other.n)) / a;
            if (tt > *lo && tt < *hi) cuts.push_back(tt);
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            Rational tm = (cuts[i] + cuts[i + 1]) / 2;
            RationalVector mid{x0[0] + tm * w[0], x0[1] + tm * w[1]};
            RationalVector plus{mid[0] + kEps * n[0], mid[1] + kEps * n[1]};
            RationalVector minus{mid[0] - kEps * n[0], mid[1] - kEps * n[1]};
            if (in_region(s, plus) != in_region(s, minus)) credit(m, labels, cuts[i + 1] - cuts[i]);
        }
    }
    return m;
}

namespace {

// x-interval of a polytope at height y (2d) or the whole extent (1d)
std::optional<std::pair<Rational, Rational>> section(const RationalPolytope& p, const Rational& y) {
    std::optional<Rational> lo, hi;
    for (const auto& h : p.halfspaces) {
        Rational a = Rational(h.normal[0]);
        Rational b = -h.offset - (p.dim == 2 ? y * h.normal[1] : Rational(0));
        if (a == 0) {
            if (b > 0) return std::nullopt;
        } else if (a > 0) {
            if (!lo || b / a > *lo) lo = b / a;
        } else {
            if (!hi || b / a < *hi) hi = b / a;
        }
    }
    if (!lo || !hi || *lo > *hi) return std::nullopt;
    return std::make_pair(*lo, *hi);
}

Rational section_length(const SliceRegion& s, const Rational& y) {
    auto outer = section(s.outer, y);
    if (!outer) return 0;
    std::vector<std::pair<Rational, Rational>> cut;
    for (const auto& h : s.holes) {
        if (h.shape.degenerate) continue;
        if (auto iv = section(h.shape, y)) {
            Rational a = std::max(iv->first, outer->first), b = std::min(iv->second, outer->second);
            if (a < b) cut.push_back({a, b});
        }
    }
    std::sort(cut.begin(), cut.end());
    Rational covered = 0, reach = outer->first;
    for (const auto& [a, b] : cut) {
        Rational start = std::max(a, reach);
        if (b > start) {
            covered += b - start;
            reach = b;
        }
    }
    return outer->second - outer->first - covered;
}

}  // namespace

Rational slab_area(const SliceRegion& s) {
    if (s.outer.degenerate) return 0;
    if (s.outer.dim == 1) return section_length(s, Rational(0));
    std::vector<Rational> ys;
    for (const auto& v : s.outer.vertices) ys.push_back(v[1]);
    std::vector<RationalHalfspace> edges = s.outer.halfspaces;
    for (const auto& h : s.holes) {
        if (h.shape.degenerate) continue;
        for (const auto& v : h.shape.vertices) ys.push_back(v[1]);
        edges.insert(edges.end(), h.shape.halfspaces.begin(), h.shape.halfspaces.end());
    }
    // the union length also bends where edges of different objects cross
    for (std::size_t i = 0; i < edges.size(); ++i)
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto& a = edges[i];
            const auto& b = edges[j];
            Rational det = Rational(a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0]);
            if (det == 0) continue;
            // a.n x = -a.off, b.n x = -b.off
            ys.push_back((a.normal[0] * -b.offset - b.normal[0] * -a.offset) / det);
        }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    Rational area = 0;
    // the section length is linear on each slab, so the midpoint rule is exact
    for (std::size_t i = 0; i + 1 < ys.size(); ++i)
        area += (ys[i + 1] - ys[i]) * section_length(s, (ys[i] + ys[i + 1]) / 2);
    return area;
}

std::vector<LatticePolytope> random_polygons(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(0, 5), count(3, 6);
    std::vector<LatticePolytope> out;
    while (out.size() < n) {
        std::vector<LatticeVector> pts;
        int k = count(rng);
        for (int i = 0; i < k; ++i) pts.push_back({coord(rng), coord(rng)});
        try {
            out.push_back(LatticePolytope::from_vertices(pts, 2));
        } catch (const GeometryError&) {
            // collinear draw
        }
    }
    return out;
}

}  // namespace hkd::testing
