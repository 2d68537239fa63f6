#include "hkd/verify.hpp"

#include "hkd/catalog.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <sstream>

namespace hkd {

std::vector<std::string> example_names() { return {"p1", "p2", "hirzebruch", "segre", "identities"}; }

std::string describe_difference(const PiecewisePolynomial& computed, const PiecewisePolynomial& table) {
    if (computed == table) return "";
    PiecewisePolynomial diff = (computed - table).normalized();
    for (const auto& pc : diff.piece_list()) {
        if (pc.poly.is_zero()) continue;
        std::ostringstream os;
        const Polynomial& c = computed.piece_at(pc.lo);
        const Polynomial& t = table.piece_at(pc.lo);
        os << "differ on [" << to_string(pc.lo) << ", " << to_string(pc.hi) << "): computed " << c.to_string()
           << ", table " << t.to_string();
        return os.str();
    }
    std::ostringstream os;
    os << "differ past " << to_string(diff.breakpoints().back()) << ": " << diff.tail().to_string();
    return os.str();
}

std::vector<Rational> random_samples(std::size_t n, const Rational& hi, const std::vector<Rational>& avoid,
                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> den_dist(2, 97);
    std::set<Rational> seen(avoid.begin(), avoid.end());
    std::vector<Rational> out;
    while (out.size() < n) {
        std::int64_t den = den_dist(rng);
        std::int64_t top = to_int64(ceil(hi * den)) - 1;
        if (top < 1) continue;
        std::uniform_int_distribution<std::int64_t> num_dist(1, top);
        Rational x(num_dist(rng), den);
        if (seen.insert(x).second) out.push_back(x);
    }
    return out;
}

Check check_assembly(const ToricPair& t, const DensityProfile& prof, const std::vector<Rational>& samples) {
    Check c{"g_I = g - f_R/I + psi", true, ""};
    for (std::size_t k = 0; k < t.facet_count(); ++k) {
        const FacetId& f = t.facets()[k];
        for (const auto& lam : samples) {
            Evaluated g = g_at(t, lam);
            Evaluated psi = psi_at(t, f, lam);
            Rational rhs = g.value - f_quotient_at(t, f, lam) + psi.value;
            Rational lhs = prof.gI.at(k)(lam);
            if (lhs != rhs) {
                c.pass = false;
                c.detail = f.name + " at " + to_string(lam) + ": profile " + to_string(lhs) + ", pointwise " +
                           to_string(rhs);
                return c;
            }
        }
    }
    c.detail = std::to_string(samples.size() * t.facet_count()) + " evaluations";
    return c;
}

Check check_half_sums(const ToricPair& t, const std::vector<Rational>& samples) {
    Check c{"g = (sum f_R/p_F - sum psi_F)/2", true, ""};
    std::vector<ToricPair> fps;
    for (const auto& f : t.facets()) fps.push_back(facet_pair(t, f));
    for (const auto& lam : samples) {
        Rational sum = 0;
        for (std::size_t k = 0; k < fps.size(); ++k)
            sum += f_at(fps[k], lam) - psi_at(t, t.facets()[k], lam).value;
        Rational g = g_at(t, lam).value;
        if (g * 2 != sum) {
            c.pass = false;
            c.detail = "at " + to_string(lam) + ": g = " + to_string(g) + ", half sum = " + to_string(sum / 2);
            return c;
        }
    }
    c.detail = std::to_string(samples.size()) + " samples";
    return c;
}

Check check_sum(const ToricPair& t, const std::vector<Rational>& samples) {
    SumIdentityReport rep = check_sum_identity(t, samples);
    Check c{"sum_F g_p_F = (s-2) g", rep.ok(), ""};
    if (!rep.ok()) {
        const auto& v = rep.violations.front();
        c.detail = "at " + to_string(v.lambda) + ": " + to_string(v.lhs) + " vs " + to_string(v.rhs);
    } else {
        c.detail = std::to_string(rep.checked) + " checked, " + std::to_string(rep.skipped) + " exceptional";
    }
    return c;
}

namespace {

Check compare(const std::string& name, const PiecewisePolynomial& computed, const PiecewisePolynomial& table) {
    std::string diff = describe_difference(computed, table);
    return {name, diff.empty(), diff};
}

Check compare_scalar(const std::string& name, const Rational& computed, const Rational& table) {
    return {name, computed == table, "computed " + to_string(computed) + ", table " + to_string(table)};
}

std::vector<Check> verify_p1() {
    std::vector<Check> out;
    for (std::int64_t l : {1, 2, 3, 5}) {
        ToricPair t = p1(l);
        DensityProfile prof = compute_profile(t);
        std::map<std::string, Rational> par{{"l", Rational(l)}};
        std::string tag = "p1(" + std::to_string(l) + ") ";
        out.push_back(compare(tag + "g_R", prof.g, reference_profile("p1", par, "g_R")));
        out.push_back(compare(tag + "g_I1", prof.gI[0], reference_profile("p1", par, "g_I1")));
        out.push_back(compare(tag + "g_I2", prof.gI[1], reference_profile("p1", par, "g_I2")));
    }
    return out;
}

std::vector<Check> verify_p2() {
    std::vector<Check> out;
    ToricPair t = p2();
    DensityProfile prof = compute_profile(t);
    for (std::size_t k = 0; k < 3; ++k)
        out.push_back(compare("p2 g_J" + std::to_string(k + 1), prof.gI[k], reference_profile("p2", {}, "g_J")));
    out.push_back(compare("p2 g_R", prof.g, reference_profile("p2", {}, "g_R")));
    out.push_back(compare("p2 g_R = 3 g_J", prof.g, Rational(3) * prof.gI[0]));
    return out;
}

std::vector<Check> verify_hirzebruch() {
    std::vector<Check> out;
    const std::vector<std::array<std::int64_t, 3>> params{{1, 1, 1}, {1, 2, 1}, {1, 1, 2}, {2, 3, 1}, {2, 1, 3}};
    for (auto [a, c, d] : params) {
        ToricPair t = hirzebruch(a, c, d);
        DensityProfile prof = compute_profile(t);
        std::map<std::string, Rational> par{{"a", Rational(a)}, {"c", Rational(c)}, {"d", Rational(d)}};
        std::string tag = "hirzebruch(" + std::to_string(a) + "," + std::to_string(c) + "," + std::to_string(d) + ") ";
        for (std::size_t k = 0; k < 4; ++k) {
            std::string id = "F" + std::to_string(k + 1);
            try {
                out.push_back(compare(tag + "f_R/I" + std::to_string(k + 1), prof.f_quotient[k],
                                      reference_profile("hirzebruch", par, "fquot_" + id)));
            } catch (const std::exception& e) {
                out.push_back({tag + "f_R/I" + std::to_string(k + 1), false, e.what()});
            }
            for (const auto& br : hirzebruch_branches(c, d)) {
                std::string name = tag + "[" + br + "] psi_" + id;
                try {
                    out.push_back(compare(name, prof.psi[k], reference_profile("hirzebruch", par, "psi_" + id, br)));
                } catch (const std::exception& e) {
                    out.push_back({name, false, e.what()});
                }
            }
        }
    }
    // the two branch tables must coincide when c = d
    for (std::int64_t a : {0, 1, 2, 3})
        for (std::int64_t c : {1, 2, 3}) {
            if (a == 0) continue;  // the tables divide by a
            std::map<std::string, Rational> par{{"a", Rational(a)}, {"c", Rational(c)}, {"d", Rational(c)}};
            for (int k = 1; k <= 4; ++k) {
                std::string id = "psi_F" + std::to_string(k);
                std::string name = "branches agree at (a,c,d)=(" + std::to_string(a) + "," + std::to_string(c) + "," +
                                   std::to_string(c) + ") " + id;
                try {
                    out.push_back(compare(name, reference_profile("hirzebruch", par, id, "c>=d"),
                                          reference_profile("hirzebruch", par, id, "c<=d")));
                } catch (const std::exception& e) {
                    out.push_back({name, false, e.what()});
                }
            }
        }
    return out;
}

std::vector<Check> verify_segre() {
    std::vector<Check> out;
    ToricPair t = builtin("segre(p1(1),p2)");
    DensityProfile prof = compute_profile(t);
    Invariants inv = invariants(prof);
    out.push_back(compare("segre beta_R#S", prof.g, reference_profile("segre", {}, "beta_R")));
    for (std::size_t k = 0; k < t.facet_count(); ++k) {
        bool on_a = k < 2;
        out.push_back(compare("segre beta_" + t.facets()[k].name, prof.gI[k],
                              reference_profile("segre", {}, on_a ? "beta_I" : "beta_J")));
        out.push_back(compare_scalar("segre tau(" + t.facets()[k].name + ")", inv.tau[k],
                                     reference_scalar("segre", on_a ? "tau_I" : "tau_J")));
    }
    out.push_back(compare_scalar("segre beta", inv.beta, reference_scalar("segre", "beta_R")));
    return out;
}

std::vector<Check> verify_identities() {
    std::vector<Check> out;
    std::uint64_t seed = 1;
    for (const auto& name : catalog_pairs()) {
        ToricPair t = builtin(name);
        DensityProfile prof = compute_profile(t);
        auto samples = random_samples(20, Rational(t.d()), prof.exceptional, seed++);
        auto tagged = [&](Check c) {
            c.name = name + " " + c.name;
            return c;
        };
        out.push_back(tagged(check_sum(t, samples)));
        // tau must vanish on the principal divisor of every degree-1 monomial
        bool ok = true;
        std::string detail;
        for (const auto& w : t.points()) {
            Rational r = principal_residual(t, prof, w);
            if (r != 0) {
                ok = false;
                detail = "residual " + to_string(r);
            }
        }
        out.push_back({name + " tau principal residuals", ok, detail});
        if (!t.exact_geometry()) continue;
        out.push_back(tagged(check_assembly(t, prof, samples)));
        out.push_back(tagged(check_half_sums(t, samples)));
    }
    return out;
}

}  // namespace

std::vector<Check> verify_example(const std::string& name) {
    if (name == "p1") return verify_p1();
    if (name == "p2") return verify_p2();
    if (name == "hirzebruch") return verify_hirzebruch();
    if (name == "segre") return verify_segre();
    if (name == "identities") return verify_identities();
    throw std::invalid_argument("unknown example '" + name + "' (expected p1, p2, hirzebruch, segre, identities)");
}

}  // namespace hkd
