#include "hkd/oracle.hpp"

#include "hkd/parallel.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hkd {
namespace {

using Span = std::pair<std::int64_t, std::int64_t>;  // closed, lo <= hi

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void check_range(const LatticePolytope& p, std::int64_t m, std::int64_t q) {
    std::int64_t big = 1;
    for (const auto& v : p.vertices())
        for (auto c : v) big = std::max(big, std::abs(c));
    for (const auto& h : p.halfspaces()) big = std::max(big, std::abs(h.offset));
    if (m < 0 || q < 2) throw std::invalid_argument("frobenius query needs m >= 0 and q >= 2");
    if (static_cast<long double>(big) * static_cast<long double>(std::max(m, q)) * 64 > 1e15L)
        throw std::overflow_error("frobenius query too large for 64-bit counting");
}

// Last-coordinate interval of sP over a fixed prefix (the first k-1 coordinates).
// For k <= 2 the rows are tabulated once.
class RowShape {
public:
    RowShape(const LatticePolytope& p, std::int64_t s) : p_(p), s_(s) {
        k_ = p.dim();
        if (s_ < 0) return;
        if (k_ == 1) {
            single_ = direct(nullptr);
        } else if (k_ == 2) {
            std::int64_t lo = p.vertices().front()[0], hi = lo;
            for (const auto& v : p.vertices()) {
                lo = std::min(lo, v[0]);
                hi = std::max(hi, v[0]);
            }
            base_ = s_ * lo;
            table_.reserve(static_cast<std::size_t>(s_ * (hi - lo) + 1));
            for (std::int64_t r = s_ * lo; r <= s_ * hi; ++r) table_.push_back(direct(&r));
        }
    }

    std::optional<Span> at(const std::int64_t* prefix) const {
        if (s_ < 0) return std::nullopt;
        if (k_ == 1) return single_;
        if (k_ == 2) {
            std::int64_t i = prefix[0] - base_;
            if (i < 0 || i >= static_cast<std::int64_t>(table_.size())) return std::nullopt;
            return table_[static_cast<std::size_t>(i)];
        }
        return direct(prefix);
    }

private:
    std::optional<Span> direct(const std::int64_t* prefix) const {
        std::int64_t lo = INT64_MIN, hi = INT64_MAX;
        for (const auto& h : p_.halfspaces()) {
            // <prefix, n'> + n_k x + s*offset >= 0
            std::int64_t rest = s_ * h.offset;
            for (int i = 0; i + 1 < k_; ++i) rest += prefix[i] * h.normal[i];
            std::int64_t nk = h.normal[k_ - 1];
            if (nk == 0) {
                if (rest < 0) return std::nullopt;
            } else if (nk > 0) {
                lo = std::max(lo, ceil_div(-rest, nk));
            } else {
                hi = std::min(hi, floor_div(rest, -nk));
            }
        }
        if (lo > hi) return std::nullopt;
        return Span{lo, hi};
    }

    const LatticePolytope& p_;
    std::int64_t s_;
    int k_ = 0;
    std::optional<Span> single_;
    std::int64_t base_ = 0;
    std::vector<std::optional<Span>> table_;
};

// Number of integers in the union of the spans, clipped to [lo, hi].
std::int64_t union_count(std::vector<Span>& spans, std::int64_t lo, std::int64_t hi) {
    if (lo > hi) return 0;
    std::sort(spans.begin(), spans.end());
    std::int64_t n = 0, cur_lo = 0, cur_hi = 0;
    bool open = false;
    for (auto [a, b] : spans) {
        a = std::max(a, lo);
        b = std::min(b, hi);
        if (a > b) continue;
        if (open && a <= cur_hi + 1) {
            cur_hi = std::max(cur_hi, b);
        } else {
            if (open) n += cur_hi - cur_lo + 1;
            cur_lo = a;
            cur_hi = b;
            open = true;
        }
    }
    if (open) n += cur_hi - cur_lo + 1;
    return n;
}

// Translate offsets t for the union of t + sP.
void collect_spans(const RowShape& shape, const std::vector<LatticeVector>& offsets, const LatticeVector& row,
                   int k, std::vector<Span>& out) {
    out.clear();
    std::int64_t rel[8];
    for (const auto& t : offsets) {
        for (int i = 0; i + 1 < k; ++i) rel[i] = row[i] - t[i];
        if (auto sp = shape.at(rel)) out.push_back({sp->first + t[k - 1], sp->second + t[k - 1]});
    }
}

// Prefix box of mP: first k-1 coordinates.
std::vector<Span> prefix_box(const LatticePolytope& p, std::int64_t m) {
    std::vector<Span> box;
    for (int i = 0; i + 1 < p.dim(); ++i) {
        std::int64_t lo = p.vertices().front()[i], hi = lo;
        for (const auto& v : p.vertices()) {
            lo = std::min(lo, v[i]);
            hi = std::max(hi, v[i]);
        }
        box.push_back({m * lo, m * hi});
    }
    return box;
}

template <class Body>
void for_each_row(const std::vector<Span>& box, Body&& body) {
    LatticeVector row(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        row[i] = box[i].first;
        if (box[i].first > box[i].second) return;
    }
    while (true) {
        body(row);
        std::size_t i = box.size();
        while (i > 0) {
            --i;
            if (row[i] < box[i].second) {
                ++row[i];
                for (std::size_t j = i + 1; j < box.size(); ++j) row[j] = box[j].first;
                goto next;
            }
        }
        return;
    next:;
    }
}

bool in_scaled(const LatticePolytope& p, const LatticeVector& x, std::int64_t s) {
    if (s < 0) return false;
    for (const auto& h : p.halfspaces()) {
        std::int64_t v = s * h.offset;
        for (std::size_t i = 0; i < x.size(); ++i) v += x[i] * h.normal[i];
        if (v < 0) return false;
    }
    return true;
}

std::vector<LatticeVector> scaled_points(const LatticeVector* add, const std::vector<LatticeVector>& pts,
                                         std::int64_t q) {
    std::vector<LatticeVector> out;
    out.reserve(pts.size());
    for (const auto& u : pts) {
        LatticeVector t(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) t[i] = q * u[i] + (add ? (*add)[i] : 0);
        out.push_back(std::move(t));
    }
    return out;
}

// L(P) minus the points on facet f
std::vector<LatticeVector> off_facet(const ToricPair& t, std::size_t f) {
    std::vector<LatticeVector> out;
    for (const auto& v : t.points())
        if (t.form(f)(v, 1) > 0) out.push_back(v);
    return out;
}

GradedLengths point_case(std::int64_t q, std::int64_t m) {
    GradedLengths g;
    g.points = 1;
    g.ring = m < q ? 1 : 0;
    return g;
}

}  // namespace

GradedLengths graded_lengths(const ToricPair& t, const FrobeniusQuery& query) {
    const auto& p = t.polytope();
    const std::int64_t q = query.q, m = query.m;
    check_range(p, m, q);
    if (p.dim() == 0) return point_case(q, m);
    const int k = p.dim();

    RowShape outer(p, m), trans(p, m - q), trans_i(p, m - q - 1);
    std::vector<LatticeVector> offsets, offsets_i;
    if (m >= q) offsets = scaled_points(nullptr, t.points(), q);
    std::optional<SupportForm> sigma;
    if (query.facet) {
        sigma = t.form(query.facet->index);
        if (m >= q + 1) {
            std::vector<LatticeVector> vs = off_facet(t, query.facet->index);
            std::map<LatticeVector, int> uniq;
            for (const auto& u : t.points())
                for (const auto& v : vs) {
                    LatticeVector w(k);
                    for (int i = 0; i < k; ++i) w[i] = q * u[i] + v[i];
                    uniq.emplace(std::move(w), 0);
                }
            for (auto& [w, _] : uniq) offsets_i.push_back(w);
        }
    }

    std::int64_t n_a = 0, n_u = 0, n_j = 0, n_uj = 0, n_ui = 0;
    std::vector<Span> spans;
    for_each_row(prefix_box(p, m), [&](const LatticeVector& row) {
        auto a = outer.at(row.data());
        if (!a) return;
        auto [lo, hi] = *a;
        n_a += hi - lo + 1;
        collect_spans(trans, offsets, row, k, spans);
        n_u += union_count(spans, lo, hi);
        if (!sigma) return;
        // sigma(s, m) >= 1 on this row: nk * x >= 1 - rest
        std::int64_t rest = sigma->offset * m;
        for (int i = 0; i + 1 < k; ++i) rest += row[i] * sigma->normal[i];
        std::int64_t nk = sigma->normal[k - 1];
        std::int64_t jlo = lo, jhi = hi;
        if (nk == 0) {
            if (rest < 1) jhi = jlo - 1;
        } else if (nk > 0) {
            jlo = std::max(jlo, ceil_div(1 - rest, nk));
        } else {
            jhi = std::min(jhi, floor_div(rest - 1, -nk));
        }
        if (jlo > jhi) return;
        n_j += jhi - jlo + 1;
        n_uj += union_count(spans, jlo, jhi);
        collect_spans(trans_i, offsets_i, row, k, spans);
        n_ui += union_count(spans, jlo, jhi);
    });

    GradedLengths g;
    g.points = n_a;
    g.ring = n_a - n_u;
    if (sigma) {
        g.ideal = n_j - n_ui;
        g.cap = n_uj - n_ui;
        g.quotient = n_a - n_u - n_j + n_uj;
        g.ideal_mod_cap = n_j - n_uj;
    }
    return g;
}

GradedLengths graded_lengths_bruteforce(const ToricPair& t, const FrobeniusQuery& query) {
    const auto& p = t.polytope();
    const std::int64_t q = query.q, m = query.m;
    check_range(p, m, q);
    if (p.dim() == 0) return point_case(q, m);
    const int k = p.dim();

    std::vector<LatticeVector> vs;
    if (query.facet) vs = off_facet(t, query.facet->index);
    RationalVector zero(k, Rational(0));
    GradedLengths g;
    for (const auto& s : lattice_points(dilate_translate(p, Rational(m), zero))) {
        ++g.points;
        bool in_frob = false;
        for (const auto& u : t.points()) {
            LatticeVector x(k);
            for (int i = 0; i < k; ++i) x[i] = s[i] - q * u[i];
            if (in_scaled(p, x, m - q)) {
                in_frob = true;
                break;
            }
        }
        if (!in_frob) ++g.ring;
        if (!query.facet) continue;
        bool in_ideal = t.form(query.facet->index)(s, m) > 0;
        bool in_prod = false;
        for (const auto& u : t.points()) {
            for (const auto& v : vs) {
                LatticeVector x(k);
                for (int i = 0; i < k; ++i) x[i] = s[i] - q * u[i] - v[i];
                if (in_scaled(p, x, m - q - 1)) {
                    in_prod = true;
                    break;
                }
            }
            if (in_prod) break;
        }
        if (in_ideal && !in_prod) ++g.ideal;
        if (in_ideal && in_frob && !in_prod) ++g.cap;
        if (!in_ideal && !in_frob) ++g.quotient;
        if (in_ideal && !in_frob) ++g.ideal_mod_cap;
    }
    return g;
}

Integer total_quotient_length(const ToricPair& t, std::int64_t q) {
    const auto top = static_cast<std::int64_t>(t.d()) * (q - 1);
    std::vector<std::int64_t> per(static_cast<std::size_t>(top + 1), 0);
    parallel_for(per.size(), [&](std::size_t i) {
        FrobeniusQuery query{q, static_cast<std::int64_t>(i), std::nullopt};
        per[i] = graded_lengths(t, query).ring;
    });
    Integer sum = 0;
    for (auto v : per) sum += v;
    return sum;
}

ApproxSample fn_gn_psin(const ToricPair& t, std::optional<FacetId> f, const Rational& lambda, std::int64_t q,
                        const PiecewisePolynomial* density_f) {
    if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
    ApproxSample s;
    s.lambda = lambda;
    s.q = q;
    s.m = to_int64(floor(lambda * q));
    s.counts = graded_lengths(t, FrobeniusQuery{q, s.m, f});
    const int d = t.d();
    const Rational qd1(Integer(ipow(q, d - 1)));
    const Rational qd2(Integer(ipow(q, d - 2)));
    const Rational lam_n = Rational(s.m) / q;
    s.f_n = Rational(s.counts.ring) / qd1;
    if (f) {
        s.psi_n = Rational(s.counts.cap) / qd2;
        s.fquot_n = Rational(s.counts.quotient) / qd2;
    }

    std::optional<Rational> exact_f;
    if (density_f) {
        exact_f = (*density_f)(lam_n);
    } else if (t.exact_geometry()) {
        exact_f = f_at(t, lam_n);
    } else if (t.segre_factors()) {
        exact_f = profile(t, Which::F)(lam_n);
    }
    if (exact_f) {
        s.g_n = (Rational(s.counts.ring) - *exact_f * qd1) / qd2;
        if (f) {
            s.gI_n = *s.g_n - s.fquot_n + s.psi_n;
            s.gI_n_direct = (Rational(s.counts.ideal) - *exact_f * qd1) / qd2;
        }
    }
    return s;
}

bool bounded_by_median(std::vector<Rational> values, const Rational& factor) {
    if (values.empty()) return true;
    std::sort(values.begin(), values.end());
    const Rational& median = values[(values.size() - 1) / 2];
    return values.back() <= factor * median;
}

bool ConvergenceReport::ok() const {
    return std::all_of(summary.begin(), summary.end(), [](const Summary& s) { return s.bounded; });
}

ConvergenceReport convergence_report(const ToricPair& t, std::optional<FacetId> f, const Rational& lambda,
                                     const std::vector<std::int64_t>& qs, const DensityProfile& prof) {
    ConvergenceReport rep;
    std::map<std::string, std::vector<Rational>> scaled;
    std::vector<std::string> order;
    auto add = [&](ConvergenceRow& row, const std::string& name, const Rational& value, const Rational& target) {
        Rational r = value - target;
        row.entries.push_back({name, value, target, r});
        if (!scaled.count(name)) order.push_back(name);
        scaled[name].push_back(abs(r) * row.sample.q);
    };
    for (auto q : qs) {
        ConvergenceRow row;
        row.sample = fn_gn_psin(t, f, lambda, q, &prof.f);
        row.lambda_n = Rational(row.sample.m) / q;
        const Rational& ln = row.lambda_n;
        add(row, "f", row.sample.f_n, prof.f(ln));
        if (row.sample.g_n) add(row, "g", *row.sample.g_n, prof.g(ln));
        if (f && !prof.psi.empty()) add(row, "psi", row.sample.psi_n, prof.psi[f->index](ln));
        if (f && row.sample.gI_n && !prof.gI.empty()) add(row, "gI", *row.sample.gI_n, prof.gI[f->index](ln));
        rep.rows.push_back(std::move(row));
    }
    for (const auto& name : order) {
        const auto& v = scaled[name];
        rep.summary.push_back({name, *std::max_element(v.begin(), v.end()), bounded_by_median(v)});
    }
    return rep;
}

}  // namespace hkd
