#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hkd {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using LatticeVector = std::vector<std::int64_t>;
using RationalVector = std::vector<Rational>;

// Accepts "p", "-p", "p/q" with optional surrounding whitespace.
// Throws std::invalid_argument on anything else or on a zero denominator.
Rational parse_rational(std::string_view text);

// "num/den", or just "num" when den == 1.
std::string to_string(const Rational& r);

// Decimal rendering rounded to `digits` significant digits. Display only.
std::string to_decimal(const Rational& r, int digits = 12);

Integer floor(const Rational& r);
Integer ceil(const Rational& r);
std::int64_t to_int64(const Integer& z);  // throws std::overflow_error

inline Rational numerator_of(const Rational& r) { return Rational(boost::multiprecision::numerator(r)); }
inline Rational denominator_of(const Rational& r) { return Rational(boost::multiprecision::denominator(r)); }

std::int64_t gcd_of(const LatticeVector& v);
RationalVector to_rational(const LatticeVector& v);

}  // namespace hkd
