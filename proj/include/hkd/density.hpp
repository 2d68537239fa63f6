#pragma once

#include "hkd/polynomial.hpp"
#include "hkd/toric.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkd {

struct ProfileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Everything the density functions need from one slice.
struct SliceMeasures {
    Rational area;
    Rational cone;   // pieces on facet lines of lambda*P
    Rational total;  // all boundary pieces
    std::vector<Rational> cone_by_facet;
    std::vector<Rational> psi_by_facet;  // translate pieces at positive sigma level
    bool ambiguous = false;
};

SliceMeasures measure_slice(const ToricPair& t, const Rational& lambda);

// A value that may sit on a candidate event level; there it is the limit from
// the right (the tables' left-closed convention) and `exceptional` is set.
struct Evaluated {
    Rational value;
    bool exceptional = false;
};

Rational f_at(const ToricPair& t, const Rational& lambda);
Evaluated g_at(const ToricPair& t, const Rational& lambda);
Evaluated psi_at(const ToricPair& t, const FacetId& f, const Rational& lambda);
Rational f_quotient_at(const ToricPair& t, const FacetId& f, const Rational& lambda);
Evaluated gI_at(const ToricPair& t, const FacetId& f, const Rational& lambda);
Evaluated alpha_at(const ToricPair& t, const FacetId& f, const Rational& lambda);

// Candidate event levels in [0, d]; contains every true breakpoint. With a
// facet, the candidates of its facet pair are added.
std::vector<Rational> breakpoints(const ToricPair& t, std::optional<FacetId> f = std::nullopt);
// All concurrency solutions in (lo, hi) without the incidence filter.
std::vector<Rational> unfiltered_events(const ToricPair& t, const Rational& lo, const Rational& hi);

enum class Which { F, G, Psi, GI, Alpha, FQuotient };
Which parse_which(const std::string& s);
std::string to_string(Which w);
bool needs_facet(Which w);

struct DensityProfile {
    PiecewisePolynomial f;
    PiecewisePolynomial g;
    PiecewisePolynomial cone;  // cone-boundary measure
    std::vector<PiecewisePolynomial> psi;  // empty when the pair has no exact geometry
    std::vector<PiecewisePolynomial> f_quotient;
    std::vector<PiecewisePolynomial> gI;
    std::vector<PiecewisePolynomial> alpha;
    std::vector<Rational> exceptional;
    std::size_t refinements = 0;  // interval splits forced by failed verification

    const PiecewisePolynomial& get(Which w, std::optional<std::size_t> facet = std::nullopt) const;
};

// Exact reconstruction between candidate breakpoints (cone dim <= 3), or via the
// product formulas for Segre pairs.
DensityProfile compute_profile(const ToricPair& t);
PiecewisePolynomial profile(const ToricPair& t, Which which, std::optional<FacetId> f = std::nullopt);

Rational integrate(const PiecewisePolynomial& p);

struct Invariants {
    Rational e_hk;
    Rational beta;
    std::vector<Rational> beta_ideal;  // per facet
    std::vector<Rational> tau;         // per facet
};

Invariants invariants(const DensityProfile& prof);

Rational tau_class(const DensityProfile& prof, const std::vector<std::int64_t>& coefficients);
PiecewisePolynomial alpha_class(const DensityProfile& prof, const std::vector<std::int64_t>& coefficients);
// sum_F sigma_F(w) tau(p_F) for a cone point w = (x, z)
Rational principal_residual(const ToricPair& t, const DensityProfile& prof, const LatticeVector& x,
                            std::int64_t z = 1);

struct SumIdentityReport {
    struct Violation {
        Rational lambda, lhs, rhs;
    };
    std::size_t checked = 0;
    std::size_t skipped = 0;  // exceptional samples
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

// sum_F g_{p_F}(lambda) = (s - 2) g(lambda) at each non-exceptional sample,
// evaluated pointwise (from the profiles for pairs without exact geometry).
SumIdentityReport check_sum_identity(const ToricPair& t, const std::vector<Rational>& samples);

}  // namespace hkd
