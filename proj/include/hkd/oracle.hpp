#pragma once

#include "hkd/density.hpp"
#include "hkd/toric.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace hkd {

struct FrobeniusQuery {
    std::int64_t q = 2;
    std::int64_t m = 0;
    std::optional<FacetId> facet;
};

// Graded lengths in degree m, all as lattice-point counts in L(mP).
// The facet-dependent ones are zero when no facet is given.
struct GradedLengths {
    std::int64_t points = 0;    // #L(mP) = l(R_m)
    std::int64_t ring = 0;      // l(R/m^[q])_m
    std::int64_t ideal = 0;     // l(I/m^[q]I)_m
    std::int64_t cap = 0;       // l((m^[q] ∩ I)/m^[q]I)_m
    std::int64_t quotient = 0;  // l(R/(m^[q] + I))_m
    std::int64_t ideal_mod_cap = 0;  // l(I/(m^[q] ∩ I))_m
    friend bool operator==(const GradedLengths&, const GradedLengths&) = default;
};

// Row-by-row interval counting.
GradedLengths graded_lengths(const ToricPair& t, const FrobeniusQuery& query);
// Point-by-point existential scans over the generators; slow, independent.
GradedLengths graded_lengths_bruteforce(const ToricPair& t, const FrobeniusQuery& query);

// sum over all degrees of l(R/m^[q])_m; the degrees past d(q-1) contribute 0
Integer total_quotient_length(const ToricPair& t, std::int64_t q);

struct ApproxSample {
    Rational lambda;
    std::int64_t q = 0;
    std::int64_t m = 0;
    GradedLengths counts;
    Rational f_n;
    std::optional<Rational> g_n;   // needs the exact density f
    Rational psi_n;
    Rational fquot_n;              // l(R/(m^[q]+I))_m / q^(d-2)
    std::optional<Rational> gI_n;  // g_n - fquot_n + psi_n
    std::optional<Rational> gI_n_direct;  // (l(I/m^[q]I)_m - f(m/q) q^(d-1)) / q^(d-2)
};

// `f` is the exact HK density used for g_n; when absent, it is computed for
// pairs with exact geometry and g_n is omitted otherwise.
ApproxSample fn_gn_psin(const ToricPair& t, std::optional<FacetId> f, const Rational& lambda, std::int64_t q,
                        const PiecewisePolynomial* density_f = nullptr);

struct ConvergenceRow {
    ApproxSample sample;
    Rational lambda_n;
    // value, target at lambda_n, residual; quantities: f, g, psi, gI
    struct Entry {
        std::string quantity;
        Rational value, target, residual;
    };
    std::vector<Entry> entries;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    // per quantity: max_q q*|residual|, and whether q*|residual| stays within 3x its median
    struct Summary {
        std::string quantity;
        Rational constant;
        bool bounded = true;
    };
    std::vector<Summary> summary;
    bool ok() const;
};

ConvergenceReport convergence_report(const ToricPair& t, std::optional<FacetId> f, const Rational& lambda,
                                     const std::vector<std::int64_t>& qs, const DensityProfile& prof);

// max <= 3 * median (lower median)
bool bounded_by_median(std::vector<Rational> values, const Rational& factor = Rational(3));

}  // namespace hkd
