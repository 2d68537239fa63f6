#pragma once

#include "hkd/exactgeom.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hkd {

struct FacetId {
    std::size_t index = 0;
    std::string name;
};

// sigma(x, z) = <x, normal> + offset * z
struct SupportForm {
    LatticeVector normal;
    std::int64_t offset = 0;

    std::int64_t operator()(const LatticeVector& x, std::int64_t z) const;
    Rational operator()(const RationalVector& x, const Rational& z) const;
    std::string to_string() const;
};

struct NormalityCertificate {
    bool normal = true;
    bool shortcut = false;  // dim <= 2: every lattice polygon is normal
    int bound = 0;          // largest k with L(kP) + L(P) = L((k+1)P) verified
    // first failure: a point of L((k+1)P) that is not a sum
    std::optional<std::pair<int, LatticeVector>> failure;
    std::string to_string() const;
};

class ToricPair;

struct SegreFactors {
    std::shared_ptr<const ToricPair> a;
    std::shared_ptr<const ToricPair> b;
};

class ToricPair {
public:
    const LatticePolytope& polytope() const { return polytope_; }
    const std::vector<FacetId>& facets() const { return facets_; }
    const std::vector<SupportForm>& forms() const { return forms_; }
    const SupportForm& form(std::size_t f) const { return forms_.at(f); }
    std::size_t facet_count() const { return facets_.size(); }
    int d() const { return polytope_.dim() + 1; }
    bool exact_geometry() const { return polytope_.dim() <= 2; }
    const NormalityCertificate& normality() const { return normality_; }
    const std::vector<LatticeVector>& points() const { return points_; }  // L(P), lex order
    const std::optional<SegreFactors>& segre_factors() const { return factors_; }

    // by display name ("F2") or by 1-based number ("2")
    FacetId find_facet(const std::string& id) const;

private:
    friend ToricPair from_polytope(const LatticePolytope&, const std::vector<std::string>&, int);
    friend ToricPair segre(const ToricPair&, const ToricPair&);

    LatticePolytope polytope_;
    std::vector<FacetId> facets_;
    std::vector<SupportForm> forms_;
    NormalityCertificate normality_;
    std::vector<LatticeVector> points_;
    std::optional<SegreFactors> factors_;
};

struct NormalityError : GeometryError {
    using GeometryError::GeometryError;
};

// Facet names default to F1, F2, ... in halfspace order. normality_bound <= 0
// picks max(1, dim - 1).
ToricPair from_polytope(const LatticePolytope& p, const std::vector<std::string>& names = {},
                        int normality_bound = 0);

NormalityCertificate check_normal(const LatticePolytope& p, int bound);
// The sum check itself, without the dim <= 2 shortcut.
NormalityCertificate check_normal_exhaustive(const LatticePolytope& p, int bound);

ToricPair facet_pair(const ToricPair& t, const FacetId& f);
// Same, with the direction lattice of the facet given explicitly by a basis.
ToricPair facet_pair(const ToricPair& t, const FacetId& f, const std::vector<LatticeVector>& basis);
// Hermite-style basis of {x in Z^k : <x, n> = 0}
std::vector<LatticeVector> kernel_basis(const LatticeVector& n);

struct MuLevelSet {
    FacetId facet;
    std::vector<Rational> levels;
};

MuLevelSet mu_set(const ToricPair& t, const FacetId& f);

ToricPair segre(const ToricPair& a, const ToricPair& b);

}  // namespace hkd
