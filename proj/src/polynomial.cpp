#include "hkd/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hkd {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, int degree) {
    std::vector<Rational> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::linear_root(const Rational& a) { return Polynomial({-a, Rational(1)}); }

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
    return coeffs_[static_cast<std::size_t>(i)];
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::antiderivative() const {
    std::vector<Rational> v(coeffs_.size() + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) v[i + 1] = coeffs_[i] / Rational(static_cast<long>(i + 1));
    return Polynomial(std::move(v));
}

Rational Polynomial::integral(const Rational& a, const Rational& b) const {
    Polynomial P = antiderivative();
    return P(b) - P(a);
}

Polynomial Polynomial::shifted(const Rational& shift) const {
    Polynomial acc;
    Polynomial xs = linear_root(-shift);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * xs + constant(*it);
    return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
    Polynomial out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (ys[i] == 0) continue;
        Polynomial basis = constant(Rational(1));
        Rational denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            basis = basis * linear_root(xs[j]);
            denom *= xs[i] - xs[j];
        }
        if (denom == 0) throw std::invalid_argument("interpolate: repeated node");
        out += basis * (ys[i] / denom);
    }
    return out;
}

std::string Polynomial::to_string(const std::string& var) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        Rational c = coeffs_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        bool neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = (c == 1) && i > 0;
        if (!unit) os << hkd::to_string(c);
        if (i > 0) {
            if (!unit) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

PiecewisePolynomial::PiecewisePolynomial() : breaks_{Rational(0)} {}

PiecewisePolynomial::PiecewisePolynomial(std::vector<Rational> breakpoints, std::vector<Polynomial> pieces,
                                         Polynomial tail)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)), tail_(std::move(tail)) {
    if (breaks_.empty() || breaks_.front() != 0)
        throw std::invalid_argument("piecewise polynomial must start at 0");
    if (pieces_.size() + 1 != breaks_.size())
        throw std::invalid_argument("piecewise polynomial: need one piece per interval");
    for (std::size_t i = 1; i < breaks_.size(); ++i)
        if (!(breaks_[i - 1] < breaks_[i])) throw std::invalid_argument("breakpoints must increase");
}

PiecewisePolynomial PiecewisePolynomial::from_pieces(const std::vector<Piece>& pieces, Polynomial tail) {
    std::vector<Rational> b{Rational(0)};
    std::vector<Polynomial> p;
    for (const auto& pc : pieces) {
        if (pc.lo != b.back()) throw std::invalid_argument("pieces must be contiguous from 0");
        if (pc.hi == pc.lo) continue;
        b.push_back(pc.hi);
        p.push_back(pc.poly);
    }
    return PiecewisePolynomial(std::move(b), std::move(p), std::move(tail));
}

PiecewisePolynomial PiecewisePolynomial::everywhere(Polynomial p) {
    return PiecewisePolynomial({Rational(0)}, {}, std::move(p));
}

std::vector<Piece> PiecewisePolynomial::piece_list() const {
    std::vector<Piece> out;
    for (std::size_t i = 0; i < pieces_.size(); ++i) out.push_back({breaks_[i], breaks_[i + 1], pieces_[i]});
    return out;
}

Rational PiecewisePolynomial::support_end() const {
    if (!compactly_supported()) throw std::domain_error("support_end: function has a nonzero tail");
    PiecewisePolynomial n = normalized();
    return n.breaks_.back();
}

int PiecewisePolynomial::max_degree() const {
    int d = tail_.degree();
    for (const auto& p : pieces_) d = std::max(d, p.degree());
    return d;
}

const Polynomial& PiecewisePolynomial::piece_at(const Rational& x) const {
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
    if (it == breaks_.begin()) {
        static const Polynomial zero;
        return zero;
    }
    auto i = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    return i < pieces_.size() ? pieces_[i] : tail_;
}

Rational PiecewisePolynomial::operator()(const Rational& x) const { return piece_at(x)(x); }

PiecewisePolynomial PiecewisePolynomial::normalized() const {
    std::vector<Rational> b{breaks_.front()};
    std::vector<Polynomial> p;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        if (!p.empty() && p.back() == pieces_[i]) {
            b.back() = breaks_[i + 1];
        } else {
            p.push_back(pieces_[i]);
            b.push_back(breaks_[i + 1]);
        }
    }
    while (!p.empty() && p.back() == tail_) {
        p.pop_back();
        b.pop_back();
    }
    return PiecewisePolynomial(std::move(b), std::move(p), tail_);
}

Rational PiecewisePolynomial::integrate() const {
    if (!compactly_supported()) throw std::domain_error("integrate: function is not compactly supported");
    Rational acc = 0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) acc += pieces_[i].integral(breaks_[i], breaks_[i + 1]);
    return acc;
}

PiecewisePolynomial PiecewisePolynomial::refined(const std::vector<Rational>& extra) const {
    std::vector<Rational> b = breaks_;
    for (const auto& x : extra)
        if (x > 0) b.push_back(x);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<Polynomial> p;
    p.reserve(b.size() - 1);
    for (std::size_t i = 0; i + 1 < b.size(); ++i) p.push_back(piece_at(b[i]));
    return PiecewisePolynomial(std::move(b), std::move(p), tail_);
}

namespace {

template <class Op>
PiecewisePolynomial combine(const PiecewisePolynomial& a, const PiecewisePolynomial& b, Op op) {
    PiecewisePolynomial ra = a.refined(b.breakpoints());
    PiecewisePolynomial rb = b.refined(a.breakpoints());
    std::vector<Polynomial> p;
    for (std::size_t i = 0; i < ra.pieces().size(); ++i) p.push_back(op(ra.pieces()[i], rb.pieces()[i]));
    return PiecewisePolynomial(ra.breakpoints(), std::move(p), op(ra.tail(), rb.tail())).normalized();
}

}  // namespace

PiecewisePolynomial operator+(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x + y; });
}

PiecewisePolynomial operator-(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x - y; });
}

PiecewisePolynomial operator*(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    return combine(a, b, [](const Polynomial& x, const Polynomial& y) { return x * y; });
}

PiecewisePolynomial operator*(const Rational& s, const PiecewisePolynomial& a) {
    std::vector<Polynomial> p;
    for (const auto& x : a.pieces_) p.push_back(x * s);
    return PiecewisePolynomial(a.breaks_, std::move(p), a.tail_ * s).normalized();
}

bool operator==(const PiecewisePolynomial& a, const PiecewisePolynomial& b) {
    PiecewisePolynomial diff = (a - b).normalized();
    return diff.pieces().empty() && diff.tail().is_zero();
}

std::string PiecewisePolynomial::to_string(const std::string& var) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < pieces_.size(); ++i)
        os << "[" << hkd::to_string(breaks_[i]) << ", " << hkd::to_string(breaks_[i + 1])
           << "): " << pieces_[i].to_string(var) << "\n";
    os << "[" << hkd::to_string(breaks_.back()) << ", inf): " << tail_.to_string(var) << "\n";
    return os.str();
}

}  // namespace hkd
