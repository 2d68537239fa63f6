#pragma once

#include "hkd/toric.hpp"

#include <istream>
#include <stdexcept>
#include <string>

namespace hkd {

struct PairSpecError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// JSON document:
//   {"builtin": "hirzebruch(1,1,2)"}  or  {"builtin": "hirzebruch", "params": [1, 1, 2]}
//   {"polytope": {"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}, "facet_names": ["x0", "y0", "diag"]}
//   {"polytope": {"dim": 2, "halfspaces": [{"normal": [1,0], "offset": 0}, ...]}}
//   {"segre": [<document>, <document>]}
// Halfspaces read <x, normal> >= -offset.
ToricPair parse_pair_document(const std::string& text, const std::string& source = "<input>");

// "-" reads stdin, an existing path reads the file, anything else is a builtin string.
ToricPair load_pair(const std::string& arg, std::istream& in);

}  // namespace hkd
