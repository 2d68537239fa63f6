#include "hkd/hilbert.hpp"

#include "hkd/density.hpp"

namespace hkd {

Polynomial ehrhart(const LatticePolytope& p) {
    const int k = p.dim();
    std::vector<Rational> xs, ys;
    for (int m = 0; m <= k; ++m) {
        xs.emplace_back(m);
        ys.emplace_back(count_lattice_points(p, m));
    }
    Polynomial e = Polynomial::interpolate(xs, ys);
    for (int m = k + 1; m <= 2 * k; ++m)
        if (e(Rational(m)) != Rational(count_lattice_points(p, m)))
            throw HilbertError("Ehrhart interpolation fails at m = " + std::to_string(m));
    return e;
}

namespace {

Integer factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

}  // namespace

HilbertData hilbert_density(const ToricPair& t, std::optional<FacetId> f) {
    const int d = t.d();
    HilbertData h;
    h.length = ehrhart(t.polytope());
    if (f) h.length -= ehrhart(facet_pair(t, *f).polytope());
    h.e0 = h.length.coeff(d - 1) * Rational(factorial(d - 1));
    h.e1_tilde = d >= 2 ? h.length.coeff(d - 2) : Rational(0);
    h.F = Polynomial::monomial(h.length.coeff(d - 1), d - 1);
    h.G = d >= 2 ? Polynomial::monomial(h.e1_tilde, d - 2) : Polynomial();
    return h;
}

SegreFacet segre_facet(const ToricPair& a, const ToricPair& b, std::size_t product_index) {
    if (product_index < a.facet_count()) return {true, a.facets()[product_index]};
    std::size_t j = product_index - a.facet_count();
    if (j >= b.facet_count()) throw std::invalid_argument("facet index out of range for the Segre pair");
    return {false, b.facets()[j]};
}

namespace {

using PP = PiecewisePolynomial;

PP all(const Polynomial& p) { return PP::everywhere(p); }

// Data of one graded module over one factor.
struct Side {
    PP F, G, f, g;
};

Side ring_side(const ToricPair& t, const DensityProfile& prof) {
    HilbertData h = hilbert_density(t);
    return {all(h.F), all(h.G), prof.f, prof.g};
}

Side ideal_side(const ToricPair& t, const DensityProfile& prof, const FacetId& f) {
    HilbertData h = hilbert_density(t, f);
    // the ideal has the same HK density as the ring
    return {all(h.F), all(h.G), prof.f, prof.gI.at(f.index)};
}

PP product_g(const Side& m, const Side& s) {
    PP G = m.F * s.G + m.G * s.F;
    return (G - (m.G - m.g) * (s.F - s.f) - (s.G - s.g) * (m.F - m.f)).normalized();
}

}  // namespace

PiecewisePolynomial segre_f(const ToricPair& a, const ToricPair& b) {
    Side m = ring_side(a, compute_profile(a));
    Side s = ring_side(b, compute_profile(b));
    return (m.F * s.F - (m.F - m.f) * (s.F - s.f)).normalized();
}

PiecewisePolynomial segre_g(const ToricPair& a, const ToricPair& b) {
    return product_g(ring_side(a, compute_profile(a)), ring_side(b, compute_profile(b)));
}

PiecewisePolynomial segre_gI(const ToricPair& a, const ToricPair& b, const SegreFacet& f) {
    DensityProfile pa = compute_profile(a), pb = compute_profile(b);
    if (f.on_a) return product_g(ideal_side(a, pa, f.facet), ring_side(b, pb));
    return product_g(ring_side(a, pa), ideal_side(b, pb, f.facet));
}

PiecewisePolynomial segre_alpha(const ToricPair& a, const ToricPair& b, const SegreFacet& f) {
    DensityProfile pa = compute_profile(a), pb = compute_profile(b);
    const ToricPair& own = f.on_a ? a : b;
    const ToricPair& other = f.on_a ? b : a;
    const DensityProfile& po = f.on_a ? pa : pb;
    const DensityProfile& pt = f.on_a ? pb : pa;
    HilbertData ring = hilbert_density(own);
    HilbertData ideal = hilbert_density(own, f.facet);
    HilbertData oth = hilbert_density(other);
    PP alpha = po.alpha.at(f.facet.index) * (all(oth.F) - pt.f) + all(ideal.G - ring.G) * pt.f;
    alpha = alpha.normalized();

    PP ring_g = product_g(ring_side(a, pa), ring_side(b, pb));
    PP ideal_g = f.on_a ? product_g(ideal_side(a, pa, f.facet), ring_side(b, pb))
                        : product_g(ring_side(a, pa), ideal_side(b, pb, f.facet));
    if (!(alpha == ideal_g - ring_g))
        throw HilbertError("Segre alpha does not match g_I - g for facet " + f.facet.name);
    return alpha;
}

}  // namespace hkd
