#include "hkd/toric.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hkd {

std::int64_t SupportForm::operator()(const LatticeVector& x, std::int64_t z) const {
    std::int64_t acc = offset * z;
    for (std::size_t i = 0; i < normal.size(); ++i) acc += x[i] * normal[i];
    return acc;
}

Rational SupportForm::operator()(const RationalVector& x, const Rational& z) const {
    Rational acc = z * offset;
    for (std::size_t i = 0; i < normal.size(); ++i) acc += x[i] * normal[i];
    return acc;
}

std::string SupportForm::to_string() const {
    static const char* kNames3[] = {"x", "y", "w"};
    std::vector<std::pair<std::int64_t, std::string>> terms;
    for (std::size_t i = 0; i < normal.size(); ++i) {
        std::string var = normal.size() <= 3 ? kNames3[i] : "x" + std::to_string(i + 1);
        terms.emplace_back(normal[i], var);
    }
    terms.emplace_back(offset, "z");
    std::ostringstream os;
    bool first = true;
    auto emit = [&](std::int64_t c, const std::string& var) {
        if (c == 0) return;
        if (c < 0)
            os << "-";
        else if (!first)
            os << "+";
        std::int64_t m = c < 0 ? -c : c;
        if (m != 1) os << m;
        os << var;
        first = false;
    };
    for (auto& [c, v] : terms)
        if (c > 0) emit(c, v);
    for (auto& [c, v] : terms)
        if (c < 0) emit(c, v);
    if (first) os << "0";
    return os.str();
}

std::string NormalityCertificate::to_string() const {
    std::ostringstream os;
    if (shortcut) {
        os << "normal (dimension <= 2: lattice polygons and segments are always normal)";
    } else if (normal) {
        os << "normal (L(kP) + L(P) = L((k+1)P) verified for k <= " << bound << ")";
    } else {
        os << "NOT normal: point (";
        for (std::size_t i = 0; i < failure->second.size(); ++i) os << (i ? "," : "") << failure->second[i];
        os << ") of L(" << failure->first + 1 << "P) is not a sum";
    }
    return os.str();
}

FacetId ToricPair::find_facet(const std::string& id) const {
    for (const auto& f : facets_)
        if (f.name == id) return f;
    try {
        std::size_t pos = 0;
        long k = std::stol(id, &pos);
        if (pos == id.size() && k >= 1 && static_cast<std::size_t>(k) <= facets_.size())
            return facets_[static_cast<std::size_t>(k - 1)];
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("unknown facet '" + id + "'");
}

NormalityCertificate check_normal_exhaustive(const LatticePolytope& p, int bound) {
    NormalityCertificate cert;
    const auto base = lattice_points(p);
    const RationalVector zero(static_cast<std::size_t>(p.dim()));
    std::set<LatticeVector> prev(base.begin(), base.end());
    for (int k = 1; k <= bound; ++k) {
        auto next = lattice_points(dilate_translate(p, Rational(k + 1), zero));
        for (const auto& y : next) {
            bool found = false;
            for (const auto& u : base) {
                LatticeVector r = y;
                for (std::size_t i = 0; i < r.size(); ++i) r[i] -= u[i];
                if (prev.count(r)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                cert.normal = false;
                cert.failure = std::make_pair(k, y);
                return cert;
            }
        }
        cert.bound = k;
        prev = std::set<LatticeVector>(next.begin(), next.end());
    }
    return cert;
}

NormalityCertificate check_normal(const LatticePolytope& p, int bound) {
    if (p.dim() <= 2) {
        NormalityCertificate cert;
        cert.shortcut = true;
        cert.bound = bound;
        return cert;
    }
    return check_normal_exhaustive(p, bound);
}

ToricPair from_polytope(const LatticePolytope& p, const std::vector<std::string>& names, int normality_bound) {
    if (!names.empty() && names.size() != p.halfspaces().size())
        throw GeometryError("expected " + std::to_string(p.halfspaces().size()) + " facet names");
    ToricPair t;
    t.polytope_ = p;
    int bound = normality_bound > 0 ? normality_bound : std::max(1, p.dim() - 1);
    t.normality_ = check_normal(p, bound);
    if (!t.normality_.normal) throw NormalityError("polytope is not normal: " + t.normality_.to_string());
    std::set<std::string> seen;
    for (std::size_t i = 0; i < p.halfspaces().size(); ++i) {
        std::string name = names.empty() ? "F" + std::to_string(i + 1) : names[i];
        if (!seen.insert(name).second) throw GeometryError("duplicate facet name '" + name + "'");
        t.facets_.push_back({i, name});
        t.forms_.push_back({p.halfspaces()[i].normal, p.halfspaces()[i].offset});
    }
    t.points_ = lattice_points(p);
    return t;
}

std::vector<LatticeVector> kernel_basis(const LatticeVector& n) {
    const std::size_t k = n.size();
    std::vector<LatticeVector> U(k, LatticeVector(k, 0));  // U[row][col]
    for (std::size_t i = 0; i < k; ++i) U[i][i] = 1;
    LatticeVector r = n;
    while (true) {
        std::size_t piv = k;
        for (std::size_t i = 0; i < k; ++i)
            if (r[i] != 0 && (piv == k || std::llabs(r[i]) < std::llabs(r[piv]))) piv = i;
        if (piv == k) throw GeometryError("kernel_basis: zero vector");
        bool done = true;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == piv || r[j] == 0) continue;
            std::int64_t q = r[j] / r[piv];
            r[j] -= q * r[piv];
            for (std::size_t row = 0; row < k; ++row) U[row][j] -= q * U[row][piv];
            if (r[j] != 0) done = false;
        }
        if (done) {
            std::vector<LatticeVector> basis;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == piv) continue;
                LatticeVector col(k);
                for (std::size_t row = 0; row < k; ++row) col[row] = U[row][j];
                basis.push_back(col);
            }
            return basis;
        }
    }
}

namespace {

// Solves B c = v for c (B given by columns), exactly; nullopt if inconsistent.
std::optional<RationalVector> solve_columns(const std::vector<LatticeVector>& cols, const LatticeVector& v) {
    const std::size_t rows = v.size(), n = cols.size();
    std::vector<RationalVector> M(rows, RationalVector(n + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) M[i][j] = cols[j][i];
        M[i][n] = v[i];
    }
    std::size_t r = 0;
    std::vector<std::size_t> pivcol;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && M[p][c] == 0) ++p;
        if (p == rows) return std::nullopt;  // dependent columns
        std::swap(M[p], M[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rational f = M[i][c] / M[r][c];
            for (std::size_t j = c; j <= n; ++j) M[i][j] -= f * M[r][j];
        }
        pivcol.push_back(c);
        ++r;
    }
    if (r < n) return std::nullopt;
    for (std::size_t i = r; i < rows; ++i)
        if (M[i][n] != 0) return std::nullopt;
    RationalVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[pivcol[i]] = M[i][n] / M[i][pivcol[i]];
    return c;
}

LatticeVector integral_coords(const std::vector<LatticeVector>& basis, const LatticeVector& v) {
    auto c = solve_columns(basis, v);
    if (!c) throw GeometryError("vector is not in the span of the facet basis");
    LatticeVector out;
    for (const auto& x : *c) {
        if (denominator_of(x) != 1) throw GeometryError("facet basis does not span the direction lattice");
        out.push_back(to_int64(boost::multiprecision::numerator(x)));
    }
    return out;
}

}  // namespace

ToricPair facet_pair(const ToricPair& t, const FacetId& f, const std::vector<LatticeVector>& basis) {
    const auto& p = t.polytope();
    if (f.index >= t.facet_count()) throw std::invalid_argument("facet not found");
    if (p.dim() == 1) return from_polytope(LatticePolytope::point(0));
    const auto& n = p.halfspaces()[f.index].normal;
    if (basis.size() + 1 != static_cast<std::size_t>(p.dim()))
        throw GeometryError("facet basis has the wrong number of vectors");
    for (const auto& b : basis) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n.size(); ++i) s += b[i] * n[i];
        if (s != 0) throw GeometryError("facet basis vector is not parallel to the facet");
    }
    // same lattice as the Hermite basis
    for (const auto& k : kernel_basis(n)) integral_coords(basis, k);

    std::vector<LatticeVector> fverts;
    for (auto vi : p.facet_vertices()[f.index]) fverts.push_back(p.vertices()[vi]);
    std::sort(fverts.begin(), fverts.end());
    const LatticeVector origin = fverts.front();
    std::vector<LatticeVector> coords;
    for (const auto& v : fverts) {
        LatticeVector d = v;
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= origin[i];
        coords.push_back(integral_coords(basis, d));
    }
    return from_polytope(LatticePolytope::from_vertices(coords, p.dim() - 1));
}

ToricPair facet_pair(const ToricPair& t, const FacetId& f) {
    if (f.index >= t.facet_count()) throw std::invalid_argument("facet not found");
    if (t.polytope().dim() == 1) return from_polytope(LatticePolytope::point(0));
    return facet_pair(t, f, kernel_basis(t.polytope().halfspaces()[f.index].normal));
}

MuLevelSet mu_set(const ToricPair& t, const FacetId& f) {
    MuLevelSet out{f, {}};
    std::set<std::int64_t> levels;
    for (const auto& u : t.points()) {
        std::int64_t v = t.form(f.index)(u, 1);
        if (v > 0) levels.insert(v);
    }
    for (auto v : levels) out.levels.emplace_back(v);
    return out;
}

ToricPair segre(const ToricPair& a, const ToricPair& b) {
    LatticePolytope prod = LatticePolytope::product(a.polytope(), b.polytope());
    std::vector<std::string> names;
    for (const auto& f : a.facets()) names.push_back(f.name + "#S");
    for (const auto& f : b.facets()) names.push_back("R#" + f.name);
    ToricPair t = from_polytope(prod, names);
    t.factors_ = SegreFactors{std::make_shared<const ToricPair>(a), std::make_shared<const ToricPair>(b)};
    return t;
}

}  // namespace hkd
