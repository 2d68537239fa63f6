#pragma once

#include "hkd/polynomial.hpp"
#include "hkd/toric.hpp"

#include <optional>
#include <stdexcept>

namespace hkd {

struct HilbertError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ehrhart polynomial in m, interpolated from #L(mP) at m = 0..dim and checked
// at m = dim+1..2*dim.
Polynomial ehrhart(const LatticePolytope& p);

// l(M_m) = F_M(m) + G_M(m) + lower order, with F_M(l) = e0/(d-1)! l^(d-1) and
// G_M(l) = e1~ l^(d-2).
struct HilbertData {
    Polynomial length;  // l(M_m) as a polynomial in m
    Rational e0;
    Rational e1_tilde;
    Polynomial F;
    Polynomial G;
};

// The ring (no facet) or the height-one prime p_F, with l((p_F)_m) = E_P(m) - E_F(m).
HilbertData hilbert_density(const ToricPair& t, std::optional<FacetId> f = std::nullopt);

// A facet of the Segre pair: index < facets of A means A's facet, else B's.
struct SegreFacet {
    bool on_a = true;
    FacetId facet;
};
SegreFacet segre_facet(const ToricPair& a, const ToricPair& b, std::size_t product_index);

PiecewisePolynomial segre_f(const ToricPair& a, const ToricPair& b);
PiecewisePolynomial segre_g(const ToricPair& a, const ToricPair& b);
PiecewisePolynomial segre_gI(const ToricPair& a, const ToricPair& b, const SegreFacet& f);
// alpha of the lifted prime, from the factor's alpha and Hilbert data; checked
// against segre_gI - segre_g (HilbertError on mismatch).
PiecewisePolynomial segre_alpha(const ToricPair& a, const ToricPair& b, const SegreFacet& f);

}  // namespace hkd
