// Acceptance run: one PASS/FAIL line per criterion, details indented below it.
#include "oracles.hpp"

#include "hkd/catalog.hpp"
#include "hkd/density.hpp"
#include "hkd/hilbert.hpp"
#include "hkd/oracle.hpp"
#include "hkd/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace hkd;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes, details;
    void fail(const std::string& why) {
        pass = false;
        details.push_back(why);
    }
    void note(const std::string& what) { notes.push_back(what); }
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
    auto t0 = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.fail(std::string("exception: ") + e.what());
    }
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(2) << seconds_since(t0);
    std::cout << "criterion " << std::setw(2) << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << title << "  ["
              << secs.str() << " s]\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    const std::size_t shown = std::getenv("HKD_ALL_DETAILS") ? 100000 : 40;
    for (std::size_t i = 0; i < o.details.size() && i < shown; ++i) std::cout << "    " << o.details[i] << "\n";
    if (o.details.size() > shown) std::cout << "    ... " << o.details.size() - shown << " more\n";
    std::cout.flush();
    if (!o.pass) ++failures;
}

void compare(Outcome& o, const std::string& what, const PiecewisePolynomial& computed,
             const PiecewisePolynomial& table) {
    std::string diff = describe_difference(computed, table);
    if (!diff.empty()) o.fail(what + ": " + diff);
}

std::string pname(const std::string& base, const std::vector<std::int64_t>& ps) {
    std::string s = base + "(";
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + std::to_string(ps[i]);
    return s + ")";
}

// ---------------------------------------------------------------------------

Outcome p1_tables() {
    Outcome o;
    for (std::int64_t l : {1, 2, 3, 5}) {
        auto t0 = Clock::now();
        ToricPair t = p1(l);
        DensityProfile prof = compute_profile(t);
        std::map<std::string, Rational> par{{"l", Rational(l)}};
        std::string tag = pname("p1", {l});
        compare(o, tag + " g_R", prof.g, reference_profile("p1", par, "g_R"));
        compare(o, tag + " g_I1", prof.gI[0], reference_profile("p1", par, "g_I1"));
        compare(o, tag + " g_I2", prof.gI[1], reference_profile("p1", par, "g_I2"));
        if (!prof.gI[0].normalized().pieces().empty() || !prof.gI[1].normalized().tail().is_zero())
            o.fail(tag + " g_I is not identically 0");
        double s = seconds_since(t0);
        if (s >= 1.0) o.fail(tag + " took " + std::to_string(s) + " s");
    }
    return o;
}

Outcome p2_tables() {
    Outcome o;
    auto t0 = Clock::now();
    ToricPair t = p2();
    DensityProfile prof = compute_profile(t);
    PiecewisePolynomial gj = reference_profile("p2", {}, "g_J");
    for (std::size_t k = 0; k < 3; ++k) compare(o, "g_J" + std::to_string(k + 1), prof.gI[k], gj);
    for (std::size_t k = 0; k < 3; ++k) compare(o, "g_R = 3 g_J" + std::to_string(k + 1), prof.g, Rational(3) * prof.gI[k]);
    double s = seconds_since(t0);
    if (s >= 5.0) o.fail("took " + std::to_string(s) + " s");
    return o;
}

Outcome hirzebruch_tables() {
    Outcome o;
    auto t0 = Clock::now();
    const std::vector<std::array<std::int64_t, 3>> params{{1, 1, 1}, {1, 2, 1}, {1, 1, 2}, {2, 3, 1}, {2, 1, 3}};
    std::size_t checked = 0;
    for (auto [a, c, d] : params) {
        ToricPair t = hirzebruch(a, c, d);
        DensityProfile prof = compute_profile(t);
        std::map<std::string, Rational> par{{"a", Rational(a)}, {"c", Rational(c)}, {"d", Rational(d)}};
        std::string tag = pname("hirzebruch", {a, c, d});
        for (std::size_t k = 0; k < 4; ++k) {
            std::string id = "F" + std::to_string(k + 1);
            ++checked;
            compare(o, tag + " f_R/I" + std::to_string(k + 1), prof.f_quotient[k],
                    reference_profile("hirzebruch", par, "fquot_" + id));
            auto branches = hirzebruch_branches(c, d);
            for (const auto& br : branches) {
                ++checked;
                compare(o, tag + " [" + br + "] psi_" + id, prof.psi[k],
                        reference_profile("hirzebruch", par, "psi_" + id, br));
            }
            if (branches.size() == 2)
                compare(o, tag + " branches agree on psi_" + id,
                        reference_profile("hirzebruch", par, "psi_" + id, branches[0]),
                        reference_profile("hirzebruch", par, "psi_" + id, branches[1]));
        }
    }
    double s = seconds_since(t0);
    if (s >= 30.0) o.fail("took " + std::to_string(s) + " s");
    o.note(std::to_string(checked) + " table comparisons");
    return o;
}

Outcome segre_tables() {
    Outcome o;
    ToricPair a = p1(1), b = p2();
    ToricPair t = segre(a, b);
    PiecewisePolynomial g = segre_g(a, b);
    compare(o, "beta_R", g, reference_profile("segre", {}, "beta_R"));
    DensityProfile prof = compute_profile(t);
    Invariants inv = invariants(prof);
    for (std::size_t k = 0; k < t.facet_count(); ++k) {
        SegreFacet sf = segre_facet(a, b, k);
        const std::string& name = t.facets()[k].name;
        compare(o, "beta_" + name, segre_gI(a, b, sf), reference_profile("segre", {}, sf.on_a ? "beta_I" : "beta_J"));
        Rational want = reference_scalar("segre", sf.on_a ? "tau_I" : "tau_J");
        if (inv.tau[k] != want) o.fail("tau(" + name + ") = " + to_string(inv.tau[k]) + ", want " + to_string(want));
    }
    Rational beta = integrate(g);
    if (beta != reference_scalar("segre", "beta_R")) o.fail("integral of beta_R = " + to_string(beta));
    o.note("integral of beta_R = " + to_string(beta));
    return o;
}

// ---------------------------------------------------------------------------
// shared random sample sets, one per (pair, facet), avoiding every event level

struct PairSamples {
    std::string name;
    ToricPair pair;
    DensityProfile prof;
    std::vector<std::vector<Rational>> per_facet;
    std::vector<Rational> all;
};

std::vector<PairSamples>& sample_sets() {
    static std::vector<PairSamples> sets = [] {
        std::vector<PairSamples> out;
        std::uint64_t seed = 1000;
        for (const auto& name : catalog_pairs()) {
            PairSamples ps{name, builtin(name), {}, {}, {}};
            ps.prof = compute_profile(ps.pair);
            std::set<Rational> all;
            for (std::size_t k = 0; k < ps.pair.facet_count(); ++k) {
                ps.per_facet.push_back(random_samples(100, Rational(ps.pair.d()), ps.prof.exceptional, seed++));
                all.insert(ps.per_facet.back().begin(), ps.per_facet.back().end());
            }
            ps.all.assign(all.begin(), all.end());
            out.push_back(std::move(ps));
        }
        return out;
    }();
    return sets;
}

Outcome assembly_identity() {
    Outcome o;
    std::size_t evaluations = 0, oracle_checks = 0;
    for (auto& ps : sample_sets()) {
        const ToricPair& t = ps.pair;
        if (!t.exact_geometry()) {
            o.note(ps.name + " skipped: no pointwise translate measure in cone dimension " + std::to_string(t.d()));
            continue;
        }
        for (std::size_t k = 0; k < t.facet_count(); ++k) {
            const FacetId& f = t.facets()[k];
            for (const auto& lam : ps.per_facet[k]) {
                Rational rhs = g_at(t, lam).value - f_quotient_at(t, f, lam) + psi_at(t, f, lam).value;
                ++evaluations;
                if (ps.prof.gI[k](lam) != rhs)
                    o.fail(ps.name + " " + f.name + " at " + to_string(lam) + ": profile " +
                           to_string(ps.prof.gI[k](lam)) + ", pointwise " + to_string(rhs));
            }
            // the same identity on brute-force lattice-point counts, exact at every q
            for (std::size_t j = 0; j < 5; ++j) {
                const Rational& lam = ps.per_facet[k][j];
                ApproxSample s = fn_gn_psin(t, f, lam, 8, &ps.prof.f);
                FrobeniusQuery q{s.q, s.m, f};
                if (graded_lengths_bruteforce(t, q) != s.counts)
                    o.fail(ps.name + " " + f.name + " q=8 m=" + std::to_string(s.m) + ": fast and brute counts differ");
                if (!s.gI_n || !s.gI_n_direct || *s.gI_n != *s.gI_n_direct)
                    o.fail(ps.name + " " + f.name + " q=8 m=" + std::to_string(s.m) + ": count identity fails");
                ++oracle_checks;
            }
        }
    }
    o.note(std::to_string(evaluations) + " pointwise evaluations, " + std::to_string(oracle_checks) +
           " count-level checks");
    return o;
}

Outcome sum_identity() {
    Outcome o;
    std::size_t checked = 0;
    for (auto& ps : sample_sets()) {
        SumIdentityReport rep = check_sum_identity(ps.pair, ps.all);
        checked += rep.checked;
        if (rep.skipped) o.fail(ps.name + ": " + std::to_string(rep.skipped) + " samples flagged exceptional");
        for (const auto& v : rep.violations)
            o.fail(ps.name + " at " + to_string(v.lambda) + ": " + to_string(v.lhs) + " vs " + to_string(v.rhs));
    }
    o.note(std::to_string(checked) + " samples over " + std::to_string(sample_sets().size()) + " pairs");
    return o;
}

Outcome half_sums() {
    Outcome o;
    std::size_t checked = 0;
    for (auto& ps : sample_sets()) {
        const ToricPair& t = ps.pair;
        if (!t.exact_geometry()) {
            o.note(ps.name + " skipped: no pointwise translate measure in cone dimension " + std::to_string(t.d()));
            continue;
        }
        std::vector<ToricPair> fps;
        for (const auto& f : t.facets()) fps.push_back(facet_pair(t, f));
        for (const auto& lam : ps.all) {
            Rational sum = 0;
            for (std::size_t k = 0; k < fps.size(); ++k) sum += f_at(fps[k], lam) - psi_at(t, t.facets()[k], lam).value;
            Rational g = g_at(t, lam).value;
            ++checked;
            if (2 * g != sum)
                o.fail(ps.name + " at " + to_string(lam) + ": g = " + to_string(g) + ", half sum " + to_string(sum / 2));
        }
    }
    o.note(std::to_string(checked) + " samples");
    return o;
}

// ---------------------------------------------------------------------------
// the q-sweep shared by the two convergence criteria

std::vector<std::int64_t> sweep_qs() {
    std::vector<std::int64_t> qs;
    for (std::int64_t q = 2; q <= 256; q *= 2) qs.push_back(q);
    return qs;
}

// Up to five dyadic lambdas, smallest denominators first, taken round-robin from
// the open intervals between consecutive event levels.
std::vector<Rational> dyadic_lambdas(const DensityProfile& prof, const Rational& d) {
    std::vector<Rational> levels;
    for (const auto& x : prof.exceptional)
        if (x >= 0 && x <= d) levels.push_back(x);
    std::vector<std::vector<Rational>> per_interval;
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
        std::vector<Rational> c;
        for (std::int64_t den = 2; den <= 256 && c.size() < 5; den *= 2)
            for (std::int64_t num = 1; num < den * d; num += 2) {
                Rational x(num, den);
                if (x > levels[i] && x < levels[i + 1] && c.size() < 5) c.push_back(x);
            }
        per_interval.push_back(std::move(c));
    }
    std::vector<Rational> out;
    for (std::size_t round = 0; out.size() < 5; ++round) {
        bool any = false;
        for (const auto& c : per_interval)
            if (round < c.size() && out.size() < 5) {
                out.push_back(c[round]);
                any = true;
            }
        if (!any) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct SweepRow {
    std::string pair, facet;
    Rational lambda;
    ConvergenceReport report;
};

std::vector<SweepRow>& sweep() {
    static std::vector<SweepRow> rows = [] {
        std::vector<SweepRow> out;
        for (auto& ps : sample_sets()) {
            if (!ps.pair.exact_geometry()) continue;
            auto lams = dyadic_lambdas(ps.prof, Rational(ps.pair.d()));
            for (const auto& f : ps.pair.facets())
                for (const auto& lam : lams)
                    out.push_back({ps.name, f.name, lam, convergence_report(ps.pair, f, lam, sweep_qs(), ps.prof)});
        }
        return out;
    }();
    return rows;
}

Outcome convergence() {
    Outcome o;
    auto t0 = Clock::now();
    std::size_t sequences = 0, failing = 0, early_peak = 0, decaying = 0;
    Rational largest = 0;
    for (const auto& row : sweep())
        for (const auto& s : row.report.summary) {
            if (s.quantity != "f" && s.quantity != "g" && s.quantity != "psi") continue;
            ++sequences;
            largest = std::max(largest, s.constant);
            if (s.bounded) continue;
            ++failing;
            std::string seq;
            Rational early = 0, late = 0;
            std::vector<Rational> tail;
            for (const auto& r : row.report.rows)
                for (const auto& e : r.entries)
                    if (e.quantity == s.quantity) {
                        Rational v = abs(e.residual) * r.sample.q;
                        seq += " " + to_string(v);
                        // before q reaches the denominator of lambda, lambda_n = floor(lambda q)/q != lambda
                        if (r.lambda_n != row.lambda) {
                            early = std::max(early, v);
                        } else {
                            late = std::max(late, v);
                            tail.push_back(v);
                        }
                    }
            if (early > late)
                ++early_peak;
            else if (std::is_sorted(tail.rbegin(), tail.rend()) && tail.back() < tail.front())
                ++decaying;
            o.fail(row.pair + " " + row.facet + " lambda=" + to_string(row.lambda) + " " + s.quantity +
                   ": max exceeds 3x median; q*|residual| over q=2..256:" + seq);
        }
    double s = seconds_since(t0);
    if (s >= 600) o.fail("took " + std::to_string(s) + " s");
    o.note(std::to_string(sequences) + " residual sequences from " + std::to_string(sweep().size()) +
           " (pair, facet, lambda) sweeps, " + std::to_string(failing) + " over the bound, largest q*|residual| " +
           to_string(largest));
    if (failing)
        o.note(std::to_string(early_peak) + " of the " + std::to_string(failing) +
               " peak at a q where lambda_n != lambda and stay smaller once lambda_n = lambda; " +
               std::to_string(decaying) + " decrease strictly once lambda_n = lambda (faster than 1/q)");
    return o;
}

Outcome ideal_vs_ring() {
    Outcome o;
    std::size_t sequences = 0, failing = 0, first_max = 0;
    for (const auto& row : sweep()) {
        std::vector<Rational> a;
        for (const auto& r : row.report.rows) {
            const auto& c = r.sample.counts;
            Rational v = abs(Rational(c.ideal - c.ring));
            int dd = builtin(row.pair).d();
            for (int i = 0; i < dd - 2; ++i) v /= r.sample.q;
            a.push_back(v);
        }
        ++sequences;
        std::vector<Rational> sorted = a;
        std::sort(sorted.begin(), sorted.end());
        Rational median = sorted[(sorted.size() - 1) / 2];
        Rational cap = 3 * std::max(median, Rational(1));
        if (sorted.back() > cap) {
            ++failing;
            if (a.front() == sorted.back()) ++first_max;
            std::string seq;
            for (const auto& v : a) seq += " " + to_string(v);
            o.fail(row.pair + " " + row.facet + " lambda=" + to_string(row.lambda) + ":" + seq);
        }
    }
    o.note(std::to_string(sequences) + " sequences, bound max <= 3 max(median, 1), " + std::to_string(failing) +
           " over the bound, " + std::to_string(first_max) + " of them largest at q = 2");
    return o;
}

Outcome principal_residuals() {
    Outcome o;
    std::size_t points = 0;
    for (auto& ps : sample_sets())
        for (const auto& w : ps.pair.points()) {
            ++points;
            Rational r = principal_residual(ps.pair, ps.prof, w);
            if (r != 0) o.fail(ps.name + ": residual " + to_string(r));
        }
    o.note(std::to_string(points) + " lattice points over " + std::to_string(sample_sets().size()) + " pairs");
    return o;
}

Outcome random_polygon_suite() {
    Outcome o;
    auto polys = testing::random_polygons(50, 20240611);
    std::size_t refinements = 0, evaluations = 0;
    Rational worst = 0;
    std::uint64_t seed = 77;
    for (std::size_t i = 0; i < polys.size(); ++i) {
        ToricPair t = from_polytope(polys[i]);
        std::string tag = "polygon " + std::to_string(i) + " " + std::to_string(t.points().size()) + " points";
        if (!t.normality().normal) {
            o.fail(tag + ": not normal");
            continue;
        }
        DensityProfile prof;
        try {
            prof = compute_profile(t);
        } catch (const ProfileError& e) {
            o.fail(tag + ": " + e.what());
            continue;
        }
        refinements += prof.refinements;
        for (const auto& lam : random_samples(5, Rational(t.d()), prof.exceptional, seed++)) {
            ++evaluations;
            if (prof.f(lam) != f_at(t, lam)) o.fail(tag + " f at " + to_string(lam));
            if (prof.g(lam) != g_at(t, lam).value) o.fail(tag + " g at " + to_string(lam));
            SliceMeasures m1 = measure_slice(t, lam), m2 = measure_slice(t, lam);
            if (m1.area != m2.area || m1.cone != m2.cone || m1.total != m2.total ||
                m1.psi_by_facet != m2.psi_by_facet)
                o.fail(tag + ": slice measures differ between runs at " + to_string(lam));
            for (std::size_t k = 0; k < t.facet_count(); ++k) {
                const FacetId& f = t.facets()[k];
                if (prof.psi[k](lam) != m1.psi_by_facet[k]) o.fail(tag + " psi_" + f.name + " at " + to_string(lam));
                if (prof.gI[k](lam) != gI_at(t, f, lam).value) o.fail(tag + " gI_" + f.name + " at " + to_string(lam));
            }
        }
        if (i < 10) {
            DensityProfile again = compute_profile(t);
            if (again.g != prof.g || again.gI != prof.gI || again.exceptional != prof.exceptional)
                o.fail(tag + ": profile differs between runs");
        }
        const std::int64_t q = 512;
        Rational e = integrate(prof.f);
        Rational approx = Rational(total_quotient_length(t, q)) / (Rational(q) * q * q);
        Rational rel = abs(approx / e - 1);
        worst = std::max(worst, rel);
        if (rel > Rational(2, 100))
            o.fail(tag + ": e_HK " + to_string(e) + ", counts give " + to_decimal(approx));
    }
    o.note(std::to_string(polys.size()) + " polygons, " + std::to_string(evaluations) + " sample points, " +
           std::to_string(refinements) + " interval refinements, worst e_HK relative gap " + to_decimal(worst));
    return o;
}

}  // namespace

int main() {
    run(1, "p1(l) densities equal the reference table, g_I identically 0", p1_tables);
    run(2, "p2 g_J equals the reference table for all facets, g_R = 3 g_J", p2_tables);
    run(3, "hirzebruch f_R/I and psi_F equal the branch tables", hirzebruch_tables);
    run(4, "segre(p1(1),p2) beta tables, integral -1/4, tau = -1/2, 1/2", segre_tables);
    run(5, "g_I = g - f_R/I + psi_F at 100 random lambda per (pair, facet)", assembly_identity);
    run(6, "sum_F g_p_F = (s-2) g on the same samples", sum_identity);
    run(7, "g = (sum_F f_R/p_F - sum_F psi_F)/2 on the same samples", half_sums);
    run(8, "q*|residual| of f_n, g_n, psi_n bounded by 3x median over q = 2..256", convergence);
    run(9, "|l(I/m^[q]I)_m - l(R/m^[q])_m| / q^(d-2) bounded over the same sweep", ideal_vs_ring);
    run(10, "principal residuals of tau vanish on every catalog pair", principal_residuals);
    run(11, "random polygons: profile vs pointwise, refinement, determinism, e_HK", random_polygon_suite);
    std::cout << (failures ? std::to_string(failures) + " of 11 criteria failed\n" : "all 11 criteria passed\n");
    return failures ? 1 : 0;
}
