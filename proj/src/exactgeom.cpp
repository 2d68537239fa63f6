#include "hkd/exactgeom.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>

namespace hkd {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t cross(const LatticeVector& o, const LatticeVector& a, const LatticeVector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

std::string show(const LatticeVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

Rational dot(const RationalVector& x, const LatticeVector& n) {
    Rational acc = 0;
    for (std::size_t i = 0; i < n.size(); ++i) acc += x[i] * n[i];
    return acc;
}

void check_normal_vector(const LatticeVector& n, int dim) {
    if (static_cast<int>(n.size()) != dim) throw GeometryError("halfspace normal has wrong dimension");
    if (std::all_of(n.begin(), n.end(), [](auto v) { return v == 0; }))
        throw GeometryError("halfspace normal is zero");
    if (gcd_of(n) != 1) throw GeometryError("halfspace normal " + show(n) + " is not primitive");
}

}  // namespace

std::int64_t Halfspace::eval(const LatticeVector& x) const {
    std::int64_t acc = offset;
    for (std::size_t i = 0; i < normal.size(); ++i) acc += x[i] * normal[i];
    return acc;
}

bool LatticePolytope::contains(const LatticeVector& x) const {
    return std::all_of(halfspaces_.begin(), halfspaces_.end(), [&](const Halfspace& h) { return h.eval(x) >= 0; });
}

void LatticePolytope::finish() {
    facet_vertices_.assign(halfspaces_.size(), {});
    max_along_.assign(halfspaces_.size(), 0);
    std::vector<int> incidences(vertices_.size(), 0);
    for (std::size_t f = 0; f < halfspaces_.size(); ++f) {
        const Halfspace& h = halfspaces_[f];
        bool first = true;
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            std::int64_t e = h.eval(vertices_[v]);
            if (e < 0) throw GeometryError("vertex " + show(vertices_[v]) + " violates a halfspace");
            if (e == 0) {
                facet_vertices_[f].push_back(v);
                ++incidences[v];
            }
            std::int64_t along = e - h.offset;
            if (first || along > max_along_[f]) max_along_[f] = along;
            first = false;
        }
        if (static_cast<int>(facet_vertices_[f].size()) < dim_)
            throw GeometryError("halfspace does not define a facet");
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (incidences[v] < dim_) throw GeometryError("vertex " + show(vertices_[v]) + " is not extreme");
}

LatticePolytope LatticePolytope::point(int ambient_dim) {
    LatticePolytope p;
    p.dim_ = ambient_dim;
    p.vertices_ = {LatticeVector(static_cast<std::size_t>(ambient_dim), 0)};
    if (ambient_dim != 0) throw GeometryError("a point is full-dimensional only in dimension 0");
    p.finish();
    return p;
}

LatticePolytope LatticePolytope::from_vertices(const std::vector<LatticeVector>& points, int dim) {
    for (const auto& v : points)
        if (static_cast<int>(v.size()) != dim) throw GeometryError("vertex " + show(v) + " has wrong dimension");
    LatticePolytope p;
    p.dim_ = dim;
    if (dim == 0) {
        if (points.empty()) throw GeometryError("empty vertex list");
        return point(0);
    }
    if (dim == 1) {
        if (points.empty()) throw GeometryError("empty vertex list");
        auto [lo, hi] = std::minmax_element(points.begin(), points.end());
        if ((*lo)[0] == (*hi)[0]) throw GeometryError("lower-dimensional input");
        p.vertices_ = {*lo, *hi};
        p.halfspaces_ = {{{1}, -(*lo)[0]}, {{-1}, (*hi)[0]}};
        p.finish();
        return p;
    }
    if (dim != 2) throw GeometryError("vertex input is supported in dimensions 1 and 2 only");

    std::vector<LatticeVector> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw GeometryError("lower-dimensional input");
    // Andrew's monotone chain, strict turns only
    std::vector<LatticeVector> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& q : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], q) <= 0) --k;
        hull[k++] = q;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw GeometryError("lower-dimensional input");

    std::vector<Halfspace> hs;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        LatticeVector n{-(b[1] - a[1]), b[0] - a[0]};
        std::int64_t g = gcd_of(n);
        n[0] /= g;
        n[1] /= g;
        hs.push_back({n, -(a[0] * n[0] + a[1] * n[1])});
    }
    std::sort(hs.begin(), hs.end(), [](const Halfspace& x, const Halfspace& y) { return x.normal > y.normal; });
    p.vertices_ = hull;
    p.halfspaces_ = hs;
    p.finish();
    return p;
}

LatticePolytope LatticePolytope::from_halfspaces(const std::vector<Halfspace>& input, int dim) {
    for (const auto& h : input) check_normal_vector(h.normal, dim);
    LatticePolytope p;
    p.dim_ = dim;
    if (dim == 1) {
        std::optional<std::int64_t> lo, hi;
        for (const auto& h : input) {
            if (h.normal[0] == 1)
                lo = lo ? std::max(*lo, -h.offset) : -h.offset;
            else
                hi = hi ? std::min(*hi, h.offset) : h.offset;
        }
        if (!lo || !hi) throw GeometryError("unbounded input");
        if (*lo > *hi) throw GeometryError("empty input");
        if (*lo == *hi) throw GeometryError("lower-dimensional input");
        bool have_lo = false, have_hi = false;
        for (const auto& h : input) {
            if (h.normal[0] == 1 && -h.offset == *lo && !have_lo) {
                p.halfspaces_.push_back(h);
                have_lo = true;
            } else if (h.normal[0] == -1 && h.offset == *hi && !have_hi) {
                p.halfspaces_.push_back(h);
                have_hi = true;
            }
        }
        p.vertices_ = {{*lo}, {*hi}};
        p.finish();
        return p;
    }
    if (dim != 2) throw GeometryError("halfspace input is supported in dimensions 1 and 2 only");

    // bounded iff no nonzero direction d has <d, n> >= 0 for every normal;
    // extreme recession directions are perpendicular to some normal
    for (std::size_t i = 0; i <= input.size(); ++i) {
        std::vector<LatticeVector> dirs;
        if (i == input.size()) {
            if (!input.empty()) break;
            dirs = {{1, 0}};
        } else {
            dirs = {{-input[i].normal[1], input[i].normal[0]}, {input[i].normal[1], -input[i].normal[0]}};
        }
        for (const auto& d : dirs) {
            bool rec = std::all_of(input.begin(), input.end(), [&](const Halfspace& h) {
                return d[0] * h.normal[0] + d[1] * h.normal[1] >= 0;
            });
            if (rec) throw GeometryError("unbounded input");
        }
    }

    std::vector<RationalVector> verts;
    for (std::size_t i = 0; i < input.size(); ++i) {
        for (std::size_t j = i + 1; j < input.size(); ++j) {
            const auto& n1 = input[i].normal;
            const auto& n2 = input[j].normal;
            std::int64_t det = n1[0] * n2[1] - n1[1] * n2[0];
            if (det == 0) continue;
            Rational a1 = input[i].offset, a2 = input[j].offset;
            RationalVector x{(-a1 * n2[1] + a2 * n1[1]) / det, (-a2 * n1[0] + a1 * n2[0]) / det};
            bool ok = std::all_of(input.begin(), input.end(), [&](const Halfspace& h) {
                return dot(x, h.normal) + h.offset >= 0;
            });
            if (ok && std::find(verts.begin(), verts.end(), x) == verts.end()) verts.push_back(x);
        }
    }
    if (verts.empty()) throw GeometryError("empty input");
    std::vector<LatticeVector> lattice;
    for (const auto& v : verts) {
        LatticeVector lv;
        for (const auto& c : v) {
            if (denominator_of(c) != 1) throw GeometryError("vertices not lattice points");
            lv.push_back(to_int64(boost::multiprecision::numerator(c)));
        }
        lattice.push_back(lv);
    }
    // vertex-built polygon gives the canonical vertex cycle and detects flatness
    LatticePolytope hull = from_vertices(lattice, 2);
    for (const auto& h : input) {
        int on = 0;
        for (const auto& v : hull.vertices_) on += h.eval(v) == 0 ? 1 : 0;
        bool dup = std::find(p.halfspaces_.begin(), p.halfspaces_.end(), h) != p.halfspaces_.end();
        if (on >= 2 && !dup) p.halfspaces_.push_back(h);
    }
    p.vertices_ = hull.vertices_;
    p.finish();
    return p;
}

LatticePolytope LatticePolytope::product(const LatticePolytope& a, const LatticePolytope& b) {
    LatticePolytope p;
    p.dim_ = a.dim_ + b.dim_;
    for (const auto& u : a.vertices_)
        for (const auto& v : b.vertices_) {
            LatticeVector w = u;
            w.insert(w.end(), v.begin(), v.end());
            p.vertices_.push_back(w);
        }
    std::sort(p.vertices_.begin(), p.vertices_.end());
    for (const auto& h : a.halfspaces_) {
        LatticeVector n = h.normal;
        n.resize(static_cast<std::size_t>(p.dim_), 0);
        p.halfspaces_.push_back({n, h.offset});
    }
    for (const auto& h : b.halfspaces_) {
        LatticeVector n(static_cast<std::size_t>(a.dim_), 0);
        n.insert(n.end(), h.normal.begin(), h.normal.end());
        p.halfspaces_.push_back({n, h.offset});
    }
    p.finish();
    return p;
}

LatticePolytope LatticePolytope::with_facet_order(const std::vector<std::size_t>& order) const {
    if (order.size() != halfspaces_.size()) throw GeometryError("facet order has wrong length");
    std::vector<bool> seen(order.size(), false);
    LatticePolytope p = *this;
    p.halfspaces_.clear();
    for (auto i : order) {
        if (i >= seen.size() || seen[i]) throw GeometryError("facet order is not a permutation");
        seen[i] = true;
        p.halfspaces_.push_back(halfspaces_[i]);
    }
    p.finish();
    return p;
}

LatticePolytope LatticePolytope::translated(const LatticeVector& t) const {
    LatticePolytope p = *this;
    for (auto& v : p.vertices_)
        for (std::size_t i = 0; i < v.size(); ++i) v[i] += t[i];
    for (auto& h : p.halfspaces_) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < t.size(); ++i) s += t[i] * h.normal[i];
        h.offset -= s;
    }
    p.finish();
    return p;
}

LatticePolytope make_polytope(const PolytopeSpec& spec) {
    if (spec.kind == PolytopeSpec::Kind::Vertices) return LatticePolytope::from_vertices(spec.vertices, spec.dim);
    return LatticePolytope::from_halfspaces(spec.halfspaces, spec.dim);
}

// ---------------------------------------------------------------------------

bool RationalPolytope::contains(const RationalVector& x) const {
    for (const auto& h : halfspaces)
        if (dot(x, h.normal) + h.offset < 0) return false;
    return true;
}

RationalPolytope dilate_translate(const LatticePolytope& p, const Rational& s, const RationalVector& t) {
    if (s < 0) throw GeometryError("negative dilation factor");
    if (static_cast<int>(t.size()) != p.dim()) throw GeometryError("translation has wrong dimension");
    RationalPolytope q;
    q.dim = p.dim();
    q.scale = s;
    q.translation = t;
    q.degenerate = (s == 0);
    if (q.degenerate) {
        q.vertices = {t};
    } else {
        for (const auto& v : p.vertices()) {
            RationalVector w(t.size());
            for (std::size_t i = 0; i < t.size(); ++i) w[i] = s * v[i] + t[i];
            q.vertices.push_back(std::move(w));
        }
    }
    for (const auto& h : p.halfspaces()) q.halfspaces.push_back({h.normal, s * h.offset - dot(t, h.normal)});
    return q;
}

std::vector<LatticeVector> lattice_points(const RationalPolytope& q) {
    std::vector<LatticeVector> out;
    const int k = q.dim;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    std::vector<std::int64_t> lo(static_cast<std::size_t>(k)), hi(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        Rational mn = q.vertices[0][static_cast<std::size_t>(i)], mx = mn;
        for (const auto& v : q.vertices) {
            mn = std::min(mn, v[static_cast<std::size_t>(i)]);
            mx = std::max(mx, v[static_cast<std::size_t>(i)]);
        }
        lo[static_cast<std::size_t>(i)] = to_int64(ceil(mn));
        hi[static_cast<std::size_t>(i)] = to_int64(floor(mx));
    }
    LatticeVector x(lo.begin(), lo.end());
    const auto last = static_cast<std::size_t>(k - 1);
    while (true) {
        // row over the first k-1 coordinates; exact interval in the last one
        bool empty = false;
        std::optional<Rational> rlo, rhi;
        for (const auto& h : q.halfspaces) {
            Rational rest = h.offset;
            for (std::size_t i = 0; i < last; ++i) rest += Rational(x[i] * h.normal[i]);
            std::int64_t c = h.normal[last];
            if (c == 0) {
                if (rest < 0) empty = true;
            } else if (c > 0) {
                Rational b = -rest / c;
                if (!rlo || b > *rlo) rlo = b;
            } else {
                Rational b = -rest / c;
                if (!rhi || b < *rhi) rhi = b;
            }
        }
        if (!empty) {
            std::int64_t a = std::max(lo[last], rlo ? to_int64(ceil(*rlo)) : lo[last]);
            std::int64_t b = std::min(hi[last], rhi ? to_int64(floor(*rhi)) : hi[last]);
            for (std::int64_t v = a; v <= b; ++v) {
                x[last] = v;
                out.push_back(x);
            }
        }
        int i = k - 2;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == hi[static_cast<std::size_t>(i)]) {
            x[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
            --i;
        }
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    return out;
}

std::vector<LatticeVector> lattice_points(const LatticePolytope& p) {
    return lattice_points(dilate_translate(p, Rational(1), RationalVector(static_cast<std::size_t>(p.dim()))));
}

std::int64_t count_lattice_points(const LatticePolytope& p, std::int64_t m) {
    const int k = p.dim();
    if (m < 0) return 0;
    if (k == 0) return 1;
    std::vector<std::int64_t> lo(static_cast<std::size_t>(k)), hi(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        auto idx = static_cast<std::size_t>(i);
        std::int64_t mn = p.vertices()[0][idx], mx = mn;
        for (const auto& v : p.vertices()) {
            mn = std::min(mn, v[idx]);
            mx = std::max(mx, v[idx]);
        }
        lo[idx] = m * mn;
        hi[idx] = m * mx;
    }
    const auto last = static_cast<std::size_t>(k - 1);
    LatticeVector x(lo.begin(), lo.end());
    std::int64_t count = 0;
    while (true) {
        std::int64_t a = lo[last], b = hi[last];
        for (const auto& h : p.halfspaces()) {
            std::int64_t rest = m * h.offset;
            for (std::size_t i = 0; i < last; ++i) rest += x[i] * h.normal[i];
            std::int64_t c = h.normal[last];
            if (c == 0) {
                if (rest < 0) b = a - 1;
            } else if (c > 0) {
                a = std::max(a, ceil_div(-rest, c));
            } else {
                b = std::min(b, floor_div(-rest, c));
            }
        }
        if (b >= a) count += b - a + 1;
        int i = k - 2;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == hi[static_cast<std::size_t>(i)]) {
            x[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(i)];
            --i;
        }
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    return count;
}

// ---------------------------------------------------------------------------

Rational segment_rvol(const RationalVector& p, const RationalVector& q) {
    Integer l = 1;
    for (std::size_t i = 0; i < p.size(); ++i) l = lcm(l, boost::multiprecision::denominator(Rational(q[i] - p[i])));
    Integer g = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        Rational scaled = (q[i] - p[i]) * Rational(l);
        g = gcd(g, boost::multiprecision::numerator(scaled));
    }
    return Rational(abs(g), l);
}

namespace {

struct Interval {
    Rational lo, hi;
};
using IntervalSet = std::vector<Interval>;  // sorted, disjoint, positive length

// sorts and merges overlapping or touching intervals
IntervalSet unite(IntervalSet v) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    IntervalSet out;
    for (auto& iv : v) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            if (iv.hi > out.back().hi) out.back().hi = iv.hi;
        } else {
            out.push_back(std::move(iv));
        }
    }
    return out;
}

IntervalSet subtract(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t j = 0;
    for (const auto& iv : a) {
        Rational cur = iv.lo;
        while (j < b.size() && b[j].hi <= cur) ++j;
        std::size_t k = j;
        while (k < b.size() && b[k].lo < iv.hi) {
            if (b[k].lo > cur) out.push_back({cur, b[k].lo});
            if (b[k].hi > cur) cur = b[k].hi;
            ++k;
        }
        if (cur < iv.hi) out.push_back({cur, iv.hi});
    }
    return unite(std::move(out));
}

struct Object {
    Rational s;
    RationalVector t;
};

struct Label {
    std::size_t facet;
    Rational mu;
    LatticeVector rep;
};

// One supporting line (a point when dim = 1): {x : <x, n> = c}, n canonical.
struct Line {
    LatticeVector n;
    Rational c;
    std::size_t facet0;  // n = sign0 * n_{facet0}
    int sign0;
    std::vector<Label> labels;
};

bool lex_negative(const LatticeVector& v) {
    for (auto x : v)
        if (x != 0) return x < 0;
    return false;
}

struct Chord {
    bool hit = false;
    Rational lo, hi;
    int facet_side = 0;  // nonzero when the line supports a facet of the object
};

Chord chord_2d(const LatticePolytope& p, const Object& o, const RationalVector& p0, const LatticeVector& w,
               const LatticeVector& n) {
    Chord ch;
    std::optional<Rational> lo, hi;
    RationalVector d{p0[0] - o.t[0], p0[1] - o.t[1]};
    for (const auto& h : p.halfspaces()) {
        Rational A = d[0] * h.normal[0] + d[1] * h.normal[1] + o.s * h.offset;
        std::int64_t B = w[0] * h.normal[0] + w[1] * h.normal[1];
        if (B == 0) {
            if (A < 0) return ch;
            if (A == 0) ch.facet_side = (h.normal[0] * n[0] + h.normal[1] * n[1]) > 0 ? 1 : -1;
            continue;
        }
        Rational b = -A / B;
        if (B > 0) {
            if (!lo || b > *lo) lo = b;
        } else {
            if (!hi || b < *hi) hi = b;
        }
    }
    if (!lo || !hi || !(*lo < *hi)) return ch;
    ch.hit = true;
    ch.lo = *lo;
    ch.hi = *hi;
    return ch;
}

std::vector<Line> collect_lines(const LatticePolytope& p, const Rational& lambda,
                                const std::vector<LatticeVector>& holes) {
    std::map<std::pair<LatticeVector, Rational>, Line> lines;
    const auto& hs = p.halfspaces();
    for (std::size_t f = 0; f < hs.size(); ++f) {
        std::map<Rational, LatticeVector> levels;
        levels.emplace(Rational(0), LatticeVector{});
        for (const auto& u : holes) {
            Rational mu = hs[f].eval(u);
            auto it = levels.find(mu);
            if (it == levels.end())
                levels.emplace(mu, u);
            else if (mu != 0 && u < it->second)
                it->second = u;
        }
        for (const auto& [mu, rep] : levels) {
            LatticeVector n = hs[f].normal;
            Rational c = mu - Rational(hs[f].offset) * lambda;
            int sign = 1;
            if (lex_negative(n)) {
                for (auto& x : n) x = -x;
                c = -c;
                sign = -1;
            }
            auto key = std::make_pair(n, c);
            auto it = lines.find(key);
            if (it == lines.end()) it = lines.emplace(key, Line{n, c, f, sign, {}}).first;
            it->second.labels.push_back({f, mu, mu == 0 ? LatticeVector{} : rep});
        }
    }
    std::vector<Line> out;
    for (auto& [k, v] : lines) out.push_back(std::move(v));
    return out;
}

std::vector<PieceTag> tags_of(const Line& line) {
    std::vector<PieceTag> tags;
    for (const auto& l : line.labels)
        tags.push_back({l.mu == 0 ? TagKind::ConeBoundary : TagKind::TranslateFacet, l.facet, l.mu, l.rep});
    return tags;
}

std::vector<BoundaryPiece> pieces_2d(const LatticePolytope& p, const Rational& lambda,
                                     const std::vector<LatticeVector>& holes) {
    std::vector<Object> objects;
    objects.push_back({lambda, {Rational(0), Rational(0)}});
    if (lambda > 1)
        for (const auto& u : holes) objects.push_back({lambda - 1, to_rational(u)});

    std::vector<BoundaryPiece> out;
    for (const auto& line : collect_lines(p, lambda, lambda > 1 ? holes : std::vector<LatticeVector>{})) {
        const auto& n = line.n;
        LatticeVector w{-n[1], n[0]};
        Rational nn = Rational(n[0] * n[0] + n[1] * n[1]);
        RationalVector p0{line.c * n[0] / nn, line.c * n[1] / nn};
        const Halfspace& h0 = p.halfspaces()[line.facet0];
        const std::int64_t hmin = -h0.offset, hmax = p.max_along(line.facet0);
        const Rational level = line.c * line.sign0;  // value of <x, n_{facet0}> on the line

        std::optional<Interval> outer_side[2];
        IntervalSet hole_side[2];
        for (std::size_t oi = 0; oi < objects.size(); ++oi) {
            const Object& o = objects[oi];
            Rational base = o.t[0] * h0.normal[0] + o.t[1] * h0.normal[1];
            if (level < base + o.s * hmin || level > base + o.s * hmax) continue;
            Chord ch = chord_2d(p, o, p0, w, n);
            if (!ch.hit) continue;
            for (int side = 0; side < 2; ++side) {
                int sgn = side == 0 ? 1 : -1;
                if (ch.facet_side != 0 && ch.facet_side != sgn) continue;
                if (oi == 0)
                    outer_side[side] = Interval{ch.lo, ch.hi};
                else
                    hole_side[side].push_back({ch.lo, ch.hi});
            }
        }
        IntervalSet region[2];
        for (int side = 0; side < 2; ++side) {
            if (!outer_side[side]) continue;
            region[side] = subtract({*outer_side[side]}, unite(std::move(hole_side[side])));
        }
        auto tags = tags_of(line);
        for (int side = 0; side < 2; ++side) {
            for (const auto& iv : subtract(region[side], region[1 - side])) {
                BoundaryPiece bp;
                bp.a = {p0[0] + iv.lo * w[0], p0[1] + iv.lo * w[1]};
                bp.b = {p0[0] + iv.hi * w[0], p0[1] + iv.hi * w[1]};
                bp.rvol = iv.hi - iv.lo;
                bp.line_normal = n;
                bp.region_side = side == 0 ? 1 : -1;
                bp.tags = tags;
                out.push_back(std::move(bp));
            }
        }
    }
    return out;
}

std::vector<BoundaryPiece> pieces_1d(const LatticePolytope& p, const Rational& lambda,
                                     const std::vector<LatticeVector>& holes) {
    const std::int64_t pmin = p.vertices().front()[0], pmax = p.vertices().back()[0];
    struct Iv {
        Rational lo, hi;
    };
    Iv outer{lambda * pmin, lambda * pmax};
    std::vector<Iv> hv;
    if (lambda > 1)
        for (const auto& u : holes) hv.push_back({u[0] + (lambda - 1) * pmin, u[0] + (lambda - 1) * pmax});
    auto right_in = [](const Iv& o, const Rational& x) { return o.lo <= x && x < o.hi; };
    auto left_in = [](const Iv& o, const Rational& x) { return o.lo < x && x <= o.hi; };

    std::vector<BoundaryPiece> out;
    if (lambda == 0) return out;
    for (const auto& line : collect_lines(p, lambda, lambda > 1 ? holes : std::vector<LatticeVector>{})) {
        const Rational& x = line.c;  // canonical normal is +1
        bool r = right_in(outer, x), l = left_in(outer, x);
        for (const auto& h : hv) {
            if (r && right_in(h, x)) r = false;
            if (l && left_in(h, x)) l = false;
        }
        if (r == l) continue;
        BoundaryPiece bp;
        bp.a = bp.b = {x};
        bp.rvol = 1;
        bp.line_normal = line.n;
        bp.region_side = r ? 1 : -1;
        bp.tags = tags_of(line);
        out.push_back(std::move(bp));
    }
    return out;
}

}  // namespace

SliceRegion slice_region(const LatticePolytope& p, const Rational& lambda,
                         const std::vector<LatticeVector>& hole_order) {
    if (lambda < 0) throw GeometryError("slice level must be nonnegative");
    if (p.dim() > 2) throw GeometryError("exact slices are available for dimension <= 2 only");
    SliceRegion s;
    s.level = lambda;
    const auto zero = RationalVector(static_cast<std::size_t>(p.dim()));
    s.outer = dilate_translate(p, lambda, zero);
    if (lambda >= 1)
        for (const auto& u : hole_order) s.holes.push_back({u, dilate_translate(p, lambda - 1, to_rational(u))});
    if (p.dim() == 1) s.pieces = pieces_1d(p, lambda, hole_order);
    if (p.dim() == 2 && lambda > 0) s.pieces = pieces_2d(p, lambda, hole_order);
    for (const auto& pc : s.pieces)
        if (pc.tags.size() > 1) s.ambiguous = true;
    return s;
}

SliceRegion slice_region(const LatticePolytope& p, const Rational& lambda) {
    return slice_region(p, lambda, lattice_points(p));
}

Rational region_volume(const SliceRegion& s) {
    if (s.outer.dim == 0) return s.holes.empty() ? Rational(1) : Rational(0);
    Rational acc = 0;
    if (s.outer.dim == 1) {
        for (const auto& pc : s.pieces) acc += pc.region_side > 0 ? -pc.a[0] : pc.a[0];
        return acc;
    }
    // Green's theorem over the oriented boundary
    for (const auto& pc : s.pieces) {
        Rational cr = pc.a[0] * pc.b[1] - pc.a[1] * pc.b[0];
        acc += pc.region_side < 0 ? cr : -cr;
    }
    return acc / 2;
}

Rational boundary_measure(const SliceRegion& s, const std::function<bool(const PieceTag&)>& filter) {
    Rational acc = 0;
    for (const auto& pc : s.pieces)
        if (std::any_of(pc.tags.begin(), pc.tags.end(), filter)) acc += pc.rvol;
    return acc;
}

bool in_region(const SliceRegion& s, const RationalVector& x) {
    if (s.outer.dim == 0) return s.holes.empty();
    if (!s.outer.contains(x)) return false;
    for (const auto& h : s.holes)
        if (!h.shape.degenerate && h.shape.contains(x)) return false;
    return true;
}

}  // namespace hkd
