// hkd: density functions of toric pairs from the command line.
#include "hkd/catalog.hpp"
#include "hkd/density.hpp"
#include "hkd/expr.hpp"
#include "hkd/hilbert.hpp"
#include "hkd/oracle.hpp"
#include "hkd/pairspec.hpp"
#include "hkd/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iostream>
#include <sstream>

using namespace hkd;

namespace {

// exit codes
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

std::string vec_str(const LatticeVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string join(const std::vector<Rational>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + to_string(xs[i]);
    return s;
}

Rational parse_lambda(const std::string& s) {
    Rational x;
    try {
        x = parse_rational(s);
    } catch (const std::exception&) {
        throw InputError("cannot read '" + s + "' as a rational (use p or p/q)");
    }
    if (x < 0) throw InputError("lambda must be >= 0");
    return x;
}

FacetId facet_of(const ToricPair& t, const std::string& id) {
    try {
        return t.find_facet(id);
    } catch (const std::invalid_argument& e) {
        std::string names;
        for (const auto& f : t.facets()) names += (names.empty() ? "" : ", ") + f.name;
        throw InputError(std::string(e.what()) + " (facets: " + names + ")");
    }
}

std::vector<Rational> event_levels(const ToricPair& t) {
    if (t.exact_geometry()) return breakpoints(t);
    return compute_profile(t).exceptional;
}

int cmd_describe(const ToricPair& t) {
    const auto& p = t.polytope();
    std::cout << "dimension: " << p.dim() << " (cone dimension " << t.d() << ")\n";
    std::cout << "vertices:";
    for (const auto& v : p.vertices()) std::cout << ' ' << vec_str(v);
    std::cout << "\nlattice points in degree 1: " << t.points().size() << "\n";
    std::cout << "facets: " << t.facet_count() << "\n";
    for (const auto& f : t.facets()) {
        MuLevelSet mu = mu_set(t, f);
        std::cout << "  " << f.name << ": sigma = " << t.form(f.index).to_string() << ", mu = {" << join(mu.levels)
                  << "}\n";
    }
    std::cout << "normality: " << t.normality().to_string() << "\n";
    if (t.segre_factors()) std::cout << "segre product: densities via the product formulas\n";
    std::cout << "breakpoints: " << join(event_levels(t)) << "\n";
    return kOk;
}

struct DensityArgs {
    std::string which = "f";
    std::string facet;
    std::string at;
    bool profile = false;
    int samples = 0;
};

int cmd_density(const ToricPair& t, const DensityArgs& a) {
    Which w;
    try {
        w = parse_which(a.which);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    std::optional<FacetId> f;
    if (needs_facet(w)) {
        if (a.facet.empty()) throw InputError("--which " + a.which + " needs --facet");
        f = facet_of(t, a.facet);
    } else if (!a.facet.empty()) {
        f = facet_of(t, a.facet);
    }
    int modes = int(!a.at.empty()) + int(a.profile) + int(a.samples > 0);
    if (modes != 1) throw InputError("give exactly one of --at, --profile, --samples");

    if (!a.at.empty()) {
        Rational lam = parse_lambda(a.at);
        Evaluated v;
        if (t.exact_geometry()) {
            switch (w) {
                case Which::F: v = {f_at(t, lam), false}; break;
                case Which::G: v = g_at(t, lam); break;
                case Which::Psi: v = psi_at(t, *f, lam); break;
                case Which::GI: v = gI_at(t, *f, lam); break;
                case Which::Alpha: v = alpha_at(t, *f, lam); break;
                case Which::FQuotient: v = {f_quotient_at(t, *f, lam), false}; break;
            }
        } else {
            DensityProfile prof = compute_profile(t);
            const auto& pp = prof.get(w, f ? std::optional<std::size_t>(f->index) : std::nullopt);
            v = {pp(lam), std::binary_search(prof.exceptional.begin(), prof.exceptional.end(), lam)};
        }
        std::cout << to_string(v.value);
        if (v.exceptional) {
            // the left limit comes from the profile piece just below lambda
            DensityProfile prof = compute_profile(t);
            const auto& pp = prof.get(w, f ? std::optional<std::size_t>(f->index) : std::nullopt);
            Rational left = 0;
            auto below = std::lower_bound(prof.exceptional.begin(), prof.exceptional.end(), lam);
            if (lam > 0) {
                Rational prev = below == prof.exceptional.begin() ? Rational(0) : *std::prev(below);
                left = pp.piece_at((prev + lam) / 2)(lam);
            }
            std::cout << "  (exceptional level: left limit " << to_string(left) << ", right limit "
                      << to_string(v.value) << ")";
        }
        std::cout << "\n";
        return kOk;
    }

    DensityProfile prof = compute_profile(t);
    PiecewisePolynomial pp = prof.get(w, f ? std::optional<std::size_t>(f->index) : std::nullopt).normalized();
    if (a.profile) {
        std::cout << pp.to_string();
        return kOk;
    }
    Rational end = pp.compactly_supported() ? pp.support_end() : Rational(t.d());
    if (end == 0) end = 1;
    std::cout << "lambda,value,value_approx\n";
    for (int i = 0; i < a.samples; ++i) {
        Rational lam = a.samples == 1 ? Rational(0) : end * i / (a.samples - 1);
        Rational v = pp(lam);
        std::cout << to_string(lam) << ',' << to_string(v) << ',' << to_decimal(v) << "\n";
    }
    return kOk;
}

int cmd_invariants(const ToricPair& t) {
    DensityProfile prof = compute_profile(t);
    Invariants inv = invariants(prof);
    std::cout << "e_HK = " << to_string(inv.e_hk) << "\n";
    std::cout << "beta = " << to_string(inv.beta) << "\n";
    for (std::size_t k = 0; k < t.facet_count(); ++k)
        std::cout << t.facets()[k].name << ": beta(p_F) = " << to_string(inv.beta_ideal[k])
                  << ", tau(p_F) = " << to_string(inv.tau[k]) << "\n";
    std::cout << "principal residuals (sum_F sigma_F(w,1) tau(p_F)):\n";
    for (const auto& w : t.points())
        std::cout << "  w = " << vec_str(w) << ": " << to_string(principal_residual(t, prof, w)) << "\n";
    return kOk;
}

bool is_prime(std::int64_t p) {
    if (p < 2) return false;
    for (std::int64_t k = 2; k * k <= p; ++k)
        if (p % k == 0) return false;
    return true;
}

int cmd_approx(const ToricPair& t, const std::string& facet, const std::string& lambda, std::int64_t p, int nmax) {
    if (!is_prime(p)) throw InputError("--p must be a prime");
    if (nmax < 1) throw InputError("--nmax must be >= 1");
    Rational lam = parse_lambda(lambda);
    std::optional<FacetId> f;
    if (!facet.empty()) f = facet_of(t, facet);
    std::vector<std::int64_t> qs;
    std::int64_t q = 1;
    for (int n = 1; n <= nmax; ++n) {
        if (q > (std::int64_t(1) << 40) / p) throw InputError("p^nmax is too large");
        q *= p;
        qs.push_back(q);
    }
    DensityProfile prof = compute_profile(t);
    ConvergenceReport rep = convergence_report(t, f, lam, qs, prof);
    std::cout << "lambda,value,target,residual,quantity,q,q_residual,residual_approx\n";
    for (const auto& row : rep.rows)
        for (const auto& e : row.entries)
            std::cout << to_string(row.lambda_n) << ',' << to_string(e.value) << ',' << to_string(e.target) << ','
                      << to_string(e.residual) << ',' << e.quantity << ',' << row.sample.q << ','
                      << to_string(e.residual * row.sample.q) << ',' << to_decimal(e.residual) << "\n";
    for (const auto& s : rep.summary)
        std::cerr << "# " << s.quantity << ": max q*|residual| = " << to_string(s.constant)
                  << (s.bounded ? ", within 3x median" : ", max exceeds 3x median") << "\n";
    // a report, not a verification: the summary is informational
    return kOk;
}

int cmd_verify(const std::string& target) {
    std::vector<std::string> names;
    if (target.empty() || target == "all") {
        names = example_names();
    } else if (target.rfind("example:", 0) == 0) {
        names = {target.substr(8)};
        auto known = example_names();
        if (std::find(known.begin(), known.end(), names[0]) == known.end())
            throw InputError("unknown example '" + names[0] + "'");
    } else {
        throw InputError("expected example:<name> or all");
    }
    std::size_t failed = 0, total = 0;
    for (const auto& n : names) {
        for (const auto& c : verify_example(n)) {
            ++total;
            if (!c.pass) ++failed;
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
            if (!c.pass || !c.detail.empty()) std::cout << ": " << c.detail;
            std::cout << "\n";
        }
    }
    std::cout << total << " checks, " << failed << " failed\n";
    return failed ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hilbert-Kunz and beta density functions of toric pairs"};
    app.require_subcommand(1);
    std::string pair_arg;
    const std::string pair_help = "builtin (p2, p1(3), hirzebruch(1,1,2), segre(p1(1),p2)), JSON file, or - for stdin";

    auto* describe = app.add_subcommand("describe", "dimension, facets, support forms, normality, breakpoints");
    describe->add_option("pair", pair_arg, pair_help)->required();

    DensityArgs dargs;
    auto* density = app.add_subcommand("density", "evaluate or tabulate a density function");
    density->add_option("pair", pair_arg, pair_help)->required();
    density->add_option("--which", dargs.which, "f, g, psi, gI, alpha or fquot")->default_val("f");
    density->add_option("--facet", dargs.facet, "facet name or 1-based number");
    density->add_option("--at", dargs.at, "exact rational lambda");
    density->add_flag("--profile", dargs.profile, "print the piecewise table");
    density->add_option("--samples", dargs.samples, "CSV of k evenly spaced samples over the support");

    auto* inv = app.add_subcommand("invariants", "e_HK, beta, and per-facet beta and tau");
    inv->add_option("pair", pair_arg, pair_help)->required();

    std::string afacet, alambda;
    std::int64_t ap = 2;
    int anmax = 6;
    auto* approx = app.add_subcommand("approx", "Frobenius-power approximations against the exact densities (CSV)");
    approx->add_option("pair", pair_arg, pair_help)->required();
    approx->add_option("--facet", afacet, "facet name or 1-based number");
    approx->add_option("--lambda", alambda, "exact rational lambda")->required();
    approx->add_option("--p", ap, "characteristic")->default_val(2);
    approx->add_option("--nmax", anmax, "q runs over p, p^2, ..., p^nmax")->default_val(6);

    std::string vtarget;
    auto* verify = app.add_subcommand("verify", "compare with the reference tables and run the identity suite");
    verify->add_option("target", vtarget, "example:<p1|p2|hirzebruch|segre|identities> or all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (verify->parsed()) return cmd_verify(vtarget);
        ToricPair t = load_pair(pair_arg, std::cin);
        if (describe->parsed()) return cmd_describe(t);
        if (density->parsed()) return cmd_density(t, dargs);
        if (inv->parsed()) return cmd_invariants(t);
        if (approx->parsed()) return cmd_approx(t, afacet, alambda, ap, anmax);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const PairSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kMismatch;
    }
    return kOk;
}
