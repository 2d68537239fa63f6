#pragma once

#include "hkd/density.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hkd {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// "p1", "p2", "hirzebruch", "segre", "identities"
std::vector<std::string> example_names();
std::vector<Check> verify_example(const std::string& name);

// Empty when equal; otherwise where the two functions first differ.
std::string describe_difference(const PiecewisePolynomial& computed, const PiecewisePolynomial& table);

// n distinct rationals in (0, hi) with denominators up to 97, none in `avoid`.
std::vector<Rational> random_samples(std::size_t n, const Rational& hi, const std::vector<Rational>& avoid,
                                     std::uint64_t seed);

// Pointwise g_I = g - f_{R/I} + psi_F against the assembled profile, per facet.
Check check_assembly(const ToricPair& t, const DensityProfile& prof, const std::vector<Rational>& samples);
// g = (sum_F f_{R/p_F} - sum_F psi_F) / 2, pointwise.
Check check_half_sums(const ToricPair& t, const std::vector<Rational>& samples);
Check check_sum(const ToricPair& t, const std::vector<Rational>& samples);

}  // namespace hkd
