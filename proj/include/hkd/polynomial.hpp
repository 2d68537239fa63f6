#pragma once

#include "hkd/rational.hpp"

#include <string>
#include <vector>

namespace hkd {

// Dense univariate polynomial with rational coefficients, lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, int degree);
    // (x - a)
    static Polynomial linear_root(const Rational& a);

    // Unique polynomial of degree < xs.size() through the points.
    static Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int i) const;

    Rational operator()(const Rational& x) const;
    Polynomial antiderivative() const;
    Rational integral(const Rational& a, const Rational& b) const;
    // p(x + shift)
    Polynomial shifted(const Rational& shift) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rational& s);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(const std::string& var = "λ") const;

private:
    void trim();
    std::vector<Rational> coeffs_;
};

struct Piece {
    Rational lo;
    Rational hi;
    Polynomial poly;
};

// Function on [0, ∞) given by polynomials on half-open intervals [b_i, b_{i+1}),
// followed by a tail polynomial on [b_k, ∞). Densities have a zero tail; the
// tail exists because Hilbert-type factors like λ^2 are not compactly supported
// and show up as intermediate terms of the product formulas.
class PiecewisePolynomial {
public:
    PiecewisePolynomial();  // the zero function
    PiecewisePolynomial(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces,
                        Polynomial tail = {});
    // Pieces must be contiguous, starting at 0.
    static PiecewisePolynomial from_pieces(const std::vector<Piece>& pieces, Polynomial tail = {});
    static PiecewisePolynomial everywhere(Polynomial p);

    const std::vector<Rational>& breakpoints() const { return breaks_; }
    const std::vector<Polynomial>& pieces() const { return pieces_; }
    const Polynomial& tail() const { return tail_; }
    std::vector<Piece> piece_list() const;

    bool compactly_supported() const { return tail_.is_zero(); }
    Rational support_end() const;  // last point where the function is nonzero on its left
    int max_degree() const;

    // Left-closed / right-open convention; 0 for x < 0.
    Rational operator()(const Rational& x) const;
    // The polynomial in force on [x, x + eps).
    const Polynomial& piece_at(const Rational& x) const;

    PiecewisePolynomial normalized() const;
    Rational integrate() const;  // throws if the tail is nonzero

    PiecewisePolynomial refined(const std::vector<Rational>& extra) const;

    friend PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b);
    friend PiecewisePolynomial operator-(const PiecewisePolynomial& a, const PiecewisePolynomial& b);
    friend PiecewisePolynomial operator*(const PiecewisePolynomial& a, const PiecewisePolynomial& b);
    friend PiecewisePolynomial operator*(const Rational& s, const PiecewisePolynomial& a);
    // equality as functions on [0, ∞)
    friend bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b);

    std::string to_string(const std::string& var = "λ") const;

private:
    std::vector<Rational> breaks_;   // b_0 = 0 < ... < b_k
    std::vector<Polynomial> pieces_; // size k
    Polynomial tail_;
};

}  // namespace hkd
