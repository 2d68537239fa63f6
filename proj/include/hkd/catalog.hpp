#pragma once

#include "hkd/polynomial.hpp"
#include "hkd/toric.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkd {

struct CatalogError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

ToricPair p1(std::int64_t l);
ToricPair p2();
// {x >= -c, 0 <= y <= d, x <= a y}, facets in that order; needs a >= 0, c, d >= 1
ToricPair hirzebruch(std::int64_t a, std::int64_t c, std::int64_t d);

// "p1(3)", "p2", "hirzebruch(1,1,2)", "segre(p1(1),p2)"
ToricPair builtin(const std::string& text);

// The pairs with reference tables, as builtin strings.
std::vector<std::string> catalog_pairs();

struct ReferenceEntry {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> profiles;  // ids valid in every branch
    std::map<std::string, std::vector<std::string>> branch_profiles;
    std::map<std::string, std::string> scalars;
};

const std::vector<ReferenceEntry>& reference_entries();
const ReferenceEntry& reference_entry(const std::string& name);

// Transcribed table evaluated at the given parameters. Branch-specific ids need
// a branch ("c>=d" or "c<=d" for hirzebruch).
PiecewisePolynomial reference_profile(const std::string& name, const std::map<std::string, Rational>& params,
                                      const std::string& id, const std::string& branch = "");
Rational reference_scalar(const std::string& name, const std::string& id);

// Both branches that apply to (c, d): one, or two when c = d.
std::vector<std::string> hirzebruch_branches(std::int64_t c, std::int64_t d);

}  // namespace hkd
