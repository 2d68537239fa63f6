#include "hkd/density.hpp"

#include "hkd/hilbert.hpp"
#include "hkd/parallel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hkd {

SliceMeasures measure_slice(const ToricPair& t, const Rational& lambda) {
    const auto& p = t.polytope();
    SliceRegion s = slice_region(p, lambda, t.points());
    SliceMeasures m;
    m.area = region_volume(s);
    m.cone_by_facet.assign(t.facet_count(), Rational(0));
    m.psi_by_facet.assign(t.facet_count(), Rational(0));
    m.ambiguous = s.ambiguous;
    for (const auto& pc : s.pieces) {
        m.total += pc.rvol;
        const PieceTag& tag = pc.tags.front();
        if (tag.kind == TagKind::ConeBoundary) {
            m.cone += pc.rvol;
            m.cone_by_facet[tag.facet] += pc.rvol;
        } else {
            m.psi_by_facet[tag.facet] += pc.rvol;
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// candidate events

namespace {

bool in_scaled(const LatticePolytope& p, const RationalVector& x, const RationalVector& t, const Rational& s) {
    for (const auto& h : p.halfspaces()) {
        Rational v = s * h.offset;
        for (std::size_t i = 0; i < x.size(); ++i) v += (x[i] - t[i]) * h.normal[i];
        if (v < 0) return false;
    }
    return true;
}

struct LevelTable {
    // per facet: level -> lattice points whose translate has that facet line
    std::vector<std::map<std::int64_t, std::vector<LatticeVector>>> levels;
};

LevelTable level_table(const ToricPair& t) {
    LevelTable lt;
    lt.levels.resize(t.facet_count());
    for (std::size_t f = 0; f < t.facet_count(); ++f) {
        lt.levels[f][0];  // the outer polytope always has level 0
        for (const auto& u : t.points()) lt.levels[f][t.form(f)(u, 1)].push_back(u);
    }
    return lt;
}

// Some object with facet f at level mu contains x (closed).
bool covered(const ToricPair& t, const LevelTable& lt, std::size_t f, std::int64_t mu, const RationalVector& x,
             const Rational& lambda) {
    const auto& p = t.polytope();
    const RationalVector zero(x.size());
    if (mu == 0 && in_scaled(p, x, zero, lambda)) return true;
    auto it = lt.levels[f].find(mu);
    if (it == lt.levels[f].end()) return false;
    for (const auto& u : it->second)
        if (in_scaled(p, x, to_rational(u), lambda - 1)) return true;
    return false;
}

std::int64_t det2(const LatticeVector& a, const LatticeVector& b) { return a[0] * b[1] - a[1] * b[0]; }

std::vector<Rational> events(const ToricPair& t, const Rational& lo, const Rational& hi, bool filtered) {
    const auto& p = t.polytope();
    const auto& hs = p.halfspaces();
    const std::size_t s = hs.size();
    LevelTable lt = level_table(t);
    std::set<Rational> out;
    auto inside = [&](const Rational& x) { return lo < x && x < hi && x > 1; };

    if (p.dim() == 1) {
        // the two endpoint families meet
        for (const auto& [m1, u1] : lt.levels[0])
            for (const auto& [m2, u2] : lt.levels[1]) {
                Rational lam = Rational(m1 + m2) / (hs[0].offset + hs[1].offset);
                if (!inside(lam)) continue;
                if (filtered) {
                    Rational x = (m1 - hs[0].offset * lam) * hs[0].normal[0];
                    RationalVector xv{x};
                    if (!in_scaled(p, xv, {Rational(0)}, lam)) continue;
                }
                out.insert(lam);
            }
        return {out.begin(), out.end()};
    }
    if (p.dim() != 2) return {};

    // three facet lines through one point
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j)
            for (std::size_t k = j + 1; k < s; ++k) {
                const auto &ni = hs[i].normal, &nj = hs[j].normal, &nk = hs[k].normal;
                std::int64_t ki = det2(nj, nk), kj = det2(nk, ni), kk = det2(ni, nj);
                if (ki == 0 || kj == 0 || kk == 0) continue;
                std::int64_t den = ki * hs[i].offset + kj * hs[j].offset + kk * hs[k].offset;
                if (den == 0) continue;
                for (const auto& [mi, ui] : lt.levels[i])
                    for (const auto& [mj, uj] : lt.levels[j])
                        for (const auto& [mk, uk] : lt.levels[k]) {
                            Rational lam = Rational(ki * mi + kj * mj + kk * mk) / den;
                            if (!inside(lam) || out.count(lam)) continue;
                            if (filtered) {
                                Rational ci = mi - hs[i].offset * lam, cj = mj - hs[j].offset * lam;
                                RationalVector x{(ci * nj[1] - cj * ni[1]) / kk, (cj * ni[0] - ci * nj[0]) / kk};
                                if (!covered(t, lt, i, mi, x, lam) || !covered(t, lt, j, mj, x, lam) ||
                                    !covered(t, lt, k, mk, x, lam))
                                    continue;
                                if (!in_scaled(p, x, {Rational(0), Rational(0)}, lam)) continue;
                            }
                            out.insert(lam);
                        }
            }

    // opposite facets whose lines coincide
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i + 1; j < s; ++j) {
            const auto &ni = hs[i].normal, &nj = hs[j].normal;
            if (ni[0] != -nj[0] || ni[1] != -nj[1]) continue;
            LatticeVector w{-ni[1], ni[0]};
            auto span = [&](std::size_t f) {
                std::vector<std::int64_t> ts;
                for (auto vi : p.facet_vertices()[f]) ts.push_back(p.vertices()[vi][0] * w[0] + p.vertices()[vi][1] * w[1]);
                return std::make_pair(*std::min_element(ts.begin(), ts.end()), *std::max_element(ts.begin(), ts.end()));
            };
            auto [li, hi_i] = span(i);
            auto [lj, hi_j] = span(j);
            for (const auto& [mi, ui] : lt.levels[i])
                for (const auto& [mj, uj] : lt.levels[j]) {
                    Rational lam = Rational(mi + mj) / (hs[i].offset + hs[j].offset);
                    if (!inside(lam) || out.count(lam)) continue;
                    if (filtered) {
                        // edges of the objects on the common line must touch
                        auto edges = [&](std::int64_t mu, const std::vector<LatticeVector>& us, std::int64_t a,
                                         std::int64_t b) {
                            std::vector<std::pair<Rational, Rational>> e;
                            if (mu == 0) e.push_back({lam * a, lam * b});
                            for (const auto& u : us) {
                                Rational base = u[0] * w[0] + u[1] * w[1];
                                e.push_back({base + (lam - 1) * a, base + (lam - 1) * b});
                            }
                            return e;
                        };
                        auto ei = edges(mi, ui, li, hi_i);
                        auto ej = edges(mj, uj, lj, hi_j);
                        bool touch = false;
                        for (const auto& x : ei)
                            for (const auto& y : ej)
                                if (x.first <= y.second && y.first <= x.second) touch = true;
                        if (!touch) continue;
                    }
                    out.insert(lam);
                }
        }
    return {out.begin(), out.end()};
}

std::vector<Rational> merge_sorted(std::vector<Rational> a, const std::vector<Rational>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

bool contains_sorted(const std::vector<Rational>& v, const Rational& x) { return std::binary_search(v.begin(), v.end(), x); }

}  // namespace

std::vector<Rational> breakpoints(const ToricPair& t, std::optional<FacetId> f) {
    if (!t.exact_geometry()) throw ProfileError("breakpoints need cone dimension <= 3");
    const Rational d = t.d();
    std::vector<Rational> out{Rational(0), Rational(1)};
    if (t.polytope().dim() > 0) {
        out.push_back(d);
        auto ev = events(t, Rational(1), d, true);
        out = merge_sorted(out, ev);
    }
    if (f) out = merge_sorted(out, breakpoints(facet_pair(t, *f)));
    return out;
}

std::vector<Rational> unfiltered_events(const ToricPair& t, const Rational& lo, const Rational& hi) {
    return events(t, lo, hi, false);
}

// ---------------------------------------------------------------------------
// interpolation between events

namespace {

struct IntervalFit {
    Rational lo, hi;
    Polynomial area, cone, total;
    std::vector<Polynomial> cone_by, psi_by;
};

std::optional<IntervalFit> try_fit(const ToricPair& t, const Rational& lo, const Rational& hi) {
    const int d = t.d();
    const int n = d + 2;
    std::vector<Rational> xs;
    std::vector<SliceMeasures> ms;
    for (int j = 1; j <= n; ++j) {
        xs.push_back(lo + (hi - lo) * Rational(j, n + 1));
        ms.push_back(measure_slice(t, xs.back()));
        if (ms.back().ambiguous) return std::nullopt;
    }
    auto fit = [&](auto get, int npts, Polynomial& out) {
        std::vector<Rational> xi(xs.begin(), xs.begin() + npts), yi;
        for (int j = 0; j < npts; ++j) yi.push_back(get(ms[static_cast<std::size_t>(j)]));
        out = Polynomial::interpolate(xi, yi);
        for (int j = npts; j < n; ++j)
            if (out(xs[static_cast<std::size_t>(j)]) != get(ms[static_cast<std::size_t>(j)])) return false;
        return true;
    };
    IntervalFit r{lo, hi, {}, {}, {}, {}, {}};
    if (!fit([](const SliceMeasures& m) { return m.area; }, d, r.area)) return std::nullopt;
    if (!fit([](const SliceMeasures& m) { return m.cone; }, d - 1, r.cone)) return std::nullopt;
    if (!fit([](const SliceMeasures& m) { return m.total; }, d - 1, r.total)) return std::nullopt;
    for (std::size_t f = 0; f < t.facet_count(); ++f) {
        Polynomial c, q;
        if (!fit([f](const SliceMeasures& m) { return m.cone_by_facet[f]; }, d - 1, c)) return std::nullopt;
        if (!fit([f](const SliceMeasures& m) { return m.psi_by_facet[f]; }, d - 1, q)) return std::nullopt;
        r.cone_by.push_back(c);
        r.psi_by.push_back(q);
    }
    return r;
}

constexpr int kMaxRefinement = 10;

void fit_range(const ToricPair& t, const Rational& lo, const Rational& hi, int depth, std::vector<IntervalFit>& out,
               std::size_t& refinements) {
    if (auto r = try_fit(t, lo, hi)) {
        out.push_back(std::move(*r));
        return;
    }
    if (depth >= kMaxRefinement)
        throw ProfileError("interpolation check keeps failing on [" + to_string(lo) + ", " + to_string(hi) +
                           "): a breakpoint was missed");
    ++refinements;
    std::vector<Rational> cuts = unfiltered_events(t, lo, hi);
    if (cuts.empty()) cuts.push_back((lo + hi) / 2);
    Rational a = lo;
    for (const auto& c : cuts) {
        fit_range(t, a, c, depth + 1, out, refinements);
        a = c;
    }
    fit_range(t, a, hi, depth + 1, out, refinements);
}

// Fit on [x, next candidate) for right limits at events.
IntervalFit fit_right_of(const ToricPair& t, const Rational& x) {
    auto b = breakpoints(t);
    auto it = std::upper_bound(b.begin(), b.end(), x);
    std::vector<IntervalFit> fits;
    std::size_t dummy = 0;
    fit_range(t, x, *it, 0, fits, dummy);
    return fits.front();
}

PiecewisePolynomial assemble(const std::vector<IntervalFit>& fits, const std::function<Polynomial(const IntervalFit&)>& get) {
    std::vector<Piece> pieces;
    for (const auto& f : fits) pieces.push_back({f.lo, f.hi, get(f)});
    return PiecewisePolynomial::from_pieces(pieces).normalized();
}

DensityProfile geometric_profile(const ToricPair& t) {
    DensityProfile prof;
    const std::size_t s = t.facet_count();
    if (t.polytope().dim() == 0) {
        prof.f = PiecewisePolynomial::from_pieces({{Rational(0), Rational(1), Polynomial::constant(Rational(1))}});
        prof.exceptional = {Rational(0), Rational(1)};
        return prof;
    }
    auto bps = breakpoints(t);
    std::vector<std::vector<IntervalFit>> per(bps.size() - 1);
    std::vector<std::size_t> refinements(per.size(), 0);
    parallel_for(per.size(), [&](std::size_t i) { fit_range(t, bps[i], bps[i + 1], 0, per[i], refinements[i]); });
    std::vector<IntervalFit> fits;
    for (auto& v : per)
        for (auto& f : v) fits.push_back(std::move(f));
    for (auto r : refinements) prof.refinements += r;

    // the region must be empty past the last candidate
    SliceMeasures past = measure_slice(t, bps.back() + Rational(1, 2));
    if (past.area != 0 || past.total != 0) throw ProfileError("region does not vanish beyond the support bound");

    prof.f = assemble(fits, [](const IntervalFit& f) { return f.area; });
    prof.cone = assemble(fits, [](const IntervalFit& f) { return f.cone; });
    PiecewisePolynomial total = assemble(fits, [](const IntervalFit& f) { return f.total; });
    prof.g = prof.cone - Rational(1, 2) * total;
    prof.exceptional = bps;
    for (std::size_t k = 0; k < s; ++k) {
        prof.psi.push_back(assemble(fits, [k](const IntervalFit& f) { return f.psi_by[k]; }));
        ToricPair fp = facet_pair(t, t.facets()[k]);
        DensityProfile sub = geometric_profile(fp);
        prof.f_quotient.push_back(sub.f);
        prof.exceptional = merge_sorted(prof.exceptional, sub.exceptional);
        prof.alpha.push_back(prof.psi[k] - prof.f_quotient[k]);
        prof.gI.push_back(prof.g + prof.alpha[k]);
    }
    return prof;
}

DensityProfile segre_profile(const ToricPair& t) {
    const auto& fac = *t.segre_factors();
    const ToricPair& a = *fac.a;
    const ToricPair& b = *fac.b;
    DensityProfile prof;
    prof.f = segre_f(a, b);
    prof.g = segre_g(a, b);
    prof.exceptional = merge_sorted(breakpoints(a), breakpoints(b));
    for (std::size_t k = 0; k < t.facet_count(); ++k) {
        SegreFacet sf = segre_facet(a, b, k);
        prof.gI.push_back(segre_gI(a, b, sf));
        prof.alpha.push_back(segre_alpha(a, b, sf));
        prof.f_quotient.push_back(geometric_profile(facet_pair(t, t.facets()[k])).f);
    }
    return prof;
}

}  // namespace

DensityProfile compute_profile(const ToricPair& t) {
    if (t.exact_geometry()) return geometric_profile(t);
    if (t.segre_factors()) return segre_profile(t);
    throw ProfileError("no exact geometry for cone dimension " + std::to_string(t.d()) + " and no Segre route");
}

const PiecewisePolynomial& DensityProfile::get(Which w, std::optional<std::size_t> facet) const {
    auto pick = [&](const std::vector<PiecewisePolynomial>& v) -> const PiecewisePolynomial& {
        if (!facet) throw std::invalid_argument(to_string(w) + " needs a facet");
        if (v.empty()) throw ProfileError(to_string(w) + " is not available for this pair");
        return v.at(*facet);
    };
    switch (w) {
        case Which::F: return f;
        case Which::G: return g;
        case Which::Psi: return pick(psi);
        case Which::GI: return pick(gI);
        case Which::Alpha: return pick(alpha);
        case Which::FQuotient: return pick(f_quotient);
    }
    return f;
}

PiecewisePolynomial profile(const ToricPair& t, Which which, std::optional<FacetId> f) {
    DensityProfile prof = compute_profile(t);
    return prof.get(which, f ? std::optional<std::size_t>(f->index) : std::nullopt);
}

Which parse_which(const std::string& s) {
    if (s == "f") return Which::F;
    if (s == "g") return Which::G;
    if (s == "psi") return Which::Psi;
    if (s == "gI" || s == "gi") return Which::GI;
    if (s == "alpha") return Which::Alpha;
    if (s == "fquot" || s == "f_quotient") return Which::FQuotient;
    throw std::invalid_argument("unknown function '" + s + "' (expected f, g, psi, gI, alpha, fquot)");
}

std::string to_string(Which w) {
    switch (w) {
        case Which::F: return "f";
        case Which::G: return "g";
        case Which::Psi: return "psi";
        case Which::GI: return "gI";
        case Which::Alpha: return "alpha";
        case Which::FQuotient: return "fquot";
    }
    return "?";
}

bool needs_facet(Which w) { return w != Which::F && w != Which::G; }

// ---------------------------------------------------------------------------
// pointwise

namespace {

void require_geometry(const ToricPair& t) {
    if (!t.exact_geometry()) throw ProfileError("pointwise evaluation needs cone dimension <= 3");
}

}  // namespace

Rational f_at(const ToricPair& t, const Rational& lambda) {
    require_geometry(t);
    if (lambda < 0) throw GeometryError("lambda must be nonnegative");
    return region_volume(slice_region(t.polytope(), lambda, t.points()));
}

Evaluated g_at(const ToricPair& t, const Rational& lambda) {
    require_geometry(t);
    if (t.polytope().dim() == 0) return {Rational(0), false};
    auto b = breakpoints(t);
    if (contains_sorted(b, lambda)) {
        if (lambda >= b.back()) return {Rational(0), true};
        IntervalFit fit = fit_right_of(t, lambda);
        return {fit.cone(lambda) - fit.total(lambda) / 2, true};
    }
    SliceMeasures m = measure_slice(t, lambda);
    return {m.cone - m.total / 2, false};
}

Evaluated psi_at(const ToricPair& t, const FacetId& f, const Rational& lambda) {
    require_geometry(t);
    auto b = breakpoints(t);
    if (contains_sorted(b, lambda)) {
        if (lambda >= b.back()) return {Rational(0), true};
        IntervalFit fit = fit_right_of(t, lambda);
        return {fit.psi_by.at(f.index)(lambda), true};
    }
    return {measure_slice(t, lambda).psi_by_facet.at(f.index), false};
}

Rational f_quotient_at(const ToricPair& t, const FacetId& f, const Rational& lambda) {
    return f_at(facet_pair(t, f), lambda);
}

Evaluated alpha_at(const ToricPair& t, const FacetId& f, const Rational& lambda) {
    Evaluated psi = psi_at(t, f, lambda);
    ToricPair fp = facet_pair(t, f);
    bool exc = psi.exceptional || contains_sorted(breakpoints(fp), lambda);
    return {psi.value - f_at(fp, lambda), exc};
}

Evaluated gI_at(const ToricPair& t, const FacetId& f, const Rational& lambda) {
    Evaluated g = g_at(t, lambda);
    Evaluated a = alpha_at(t, f, lambda);
    return {g.value + a.value, g.exceptional || a.exceptional};
}

// ---------------------------------------------------------------------------

Rational integrate(const PiecewisePolynomial& p) { return p.integrate(); }

Invariants invariants(const DensityProfile& prof) {
    Invariants inv;
    inv.e_hk = prof.f.integrate();
    inv.beta = prof.g.integrate();
    for (const auto& g : prof.gI) inv.beta_ideal.push_back(g.integrate());
    for (const auto& a : prof.alpha) inv.tau.push_back(a.integrate());
    return inv;
}

Rational tau_class(const DensityProfile& prof, const std::vector<std::int64_t>& coefficients) {
    if (coefficients.size() != prof.alpha.size()) throw std::invalid_argument("one coefficient per facet expected");
    Rational acc = 0;
    for (std::size_t k = 0; k < coefficients.size(); ++k)
        if (coefficients[k] != 0) acc += Rational(coefficients[k]) * prof.alpha[k].integrate();
    return acc;
}

PiecewisePolynomial alpha_class(const DensityProfile& prof, const std::vector<std::int64_t>& coefficients) {
    if (coefficients.size() != prof.alpha.size()) throw std::invalid_argument("one coefficient per facet expected");
    PiecewisePolynomial acc;
    for (std::size_t k = 0; k < coefficients.size(); ++k)
        if (coefficients[k] != 0) acc = acc + Rational(coefficients[k]) * prof.alpha[k];
    return acc;
}

Rational principal_residual(const ToricPair& t, const DensityProfile& prof, const LatticeVector& x, std::int64_t z) {
    std::vector<std::int64_t> c;
    for (std::size_t k = 0; k < t.facet_count(); ++k) c.push_back(t.form(k)(x, z));
    return tau_class(prof, c);
}

SumIdentityReport check_sum_identity(const ToricPair& t, const std::vector<Rational>& samples) {
    SumIdentityReport rep;
    const auto s = static_cast<std::int64_t>(t.facet_count());
    if (!t.exact_geometry()) {
        DensityProfile prof = compute_profile(t);
        for (const auto& lam : samples) {
            if (contains_sorted(prof.exceptional, lam)) {
                ++rep.skipped;
                continue;
            }
            Rational lhs = 0;
            for (const auto& g : prof.gI) lhs += g(lam);
            Rational rhs = Rational(s - 2) * prof.g(lam);
            ++rep.checked;
            if (lhs != rhs) rep.violations.push_back({lam, lhs, rhs});
        }
        return rep;
    }
    std::vector<Rational> exc = breakpoints(t);
    std::vector<ToricPair> fps;
    for (const auto& f : t.facets()) {
        fps.push_back(facet_pair(t, f));
        exc = merge_sorted(exc, breakpoints(fps.back()));
    }
    for (const auto& lam : samples) {
        if (contains_sorted(exc, lam)) {
            ++rep.skipped;
            continue;
        }
        SliceMeasures m = measure_slice(t, lam);
        Rational g = m.cone - m.total / 2;
        Rational lhs = 0;
        for (std::size_t k = 0; k < fps.size(); ++k) lhs += g - f_at(fps[k], lam) + m.psi_by_facet[k];
        Rational rhs = Rational(s - 2) * g;
        ++rep.checked;
        if (lhs != rhs) rep.violations.push_back({lam, lhs, rhs});
    }
    return rep;
}

}  // namespace hkd
