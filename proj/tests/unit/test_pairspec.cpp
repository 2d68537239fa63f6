#include "doctest.h"

#include "hkd/catalog.hpp"
#include "hkd/pairspec.hpp"

#include <sstream>
#include <string>

using namespace hkd;

namespace {
std::string error_of(const std::string& doc) {
    try {
        parse_pair_document(doc, "in.json");
    } catch (const PairSpecError& e) {
        return e.what();
    }
    return "";
}
}  // namespace

TEST_CASE("document forms") {
    CHECK(parse_pair_document(R"({"builtin": "p2"})").points().size() == 3);
    CHECK(parse_pair_document(R"({"builtin": "hirzebruch", "params": [1, 1, 2]})").points().size() == 9);
    ToricPair v = parse_pair_document(
        R"({"polytope": {"dim": 2, "vertices": [[0,0],[1,0],[0,1]]}, "facet_names": ["a", "b", "c"]})");
    CHECK(v.facet_count() == 3);
    CHECK(v.find_facet("c").index == 2);
    ToricPair h = parse_pair_document(R"({"polytope": {"dim": 2, "halfspaces": [
        {"normal": [1, 0], "offset": 1}, {"normal": [0, 1], "offset": 0},
        {"normal": [-1, 1], "offset": 0}, {"normal": [0, -1], "offset": 1}]}})");
    CHECK(h.points().size() == hirzebruch(1, 1, 1).points().size());
    ToricPair s = parse_pair_document(R"j({"segre": [{"builtin": "p1(1)"}, {"builtin": "p2"}]})j");
    CHECK(s.facet_count() == 5);
    CHECK(parse_pair_document(R"({"polytope": {"dim": 1, "vertices": [[0],[3]]}})").points().size() == 4);
}

TEST_CASE("errors name the offending field") {
    CHECK(error_of(R"([1, 2])") == "in.json: document: expected an object");
    CHECK(error_of(R"({"builtin": "p2", "segre": []})").find("exactly one of") != std::string::npos);
    CHECK(error_of(R"({"builtin": 3})") == "in.json: builtin: expected a string");
    CHECK(error_of(R"({"builtin": "hirzebruch", "params": [1, "x", 2]})") ==
          "in.json: params[1]: expected an integer");
    CHECK(error_of(R"({"polytope": {"dim": 2, "vertices": [[0,0],[1]]}})") ==
          "in.json: polytope.vertices[1]: expected 2 coordinates, got 1");
    CHECK(error_of(R"({"polytope": {"dim": 4, "vertices": []}})").find("polytope.dim") != std::string::npos);
    CHECK(error_of(R"({"segre": [{"builtin": "p2"}, {"polytope": {"dim": 2}}]})").find("segre[1].polytope") !=
          std::string::npos);
    CHECK(error_of(R"({"polytope": {"dim": 2, "halfspaces": [{"normal": [1,0]}]}})")
              .find("polytope.halfspaces[0]") != std::string::npos);
    // degenerate input surfaces the geometry message under the field path
    CHECK(error_of(R"({"polytope": {"dim": 2, "vertices": [[0,0],[1,1],[2,2]]}})")== "in.json: polytope: lower-dimensional input");
    CHECK_FALSE(error_of(R"({"builtin": "p2", "facet_names": ["a", "a", "b"]})").empty());
}

TEST_CASE("invalid JSON reports line and column") {
    CHECK(error_of("{\n  \"builtin\": \"p2\",\n}") == "in.json:3:1: invalid JSON");
    // the column is that of the last character read, here the end of the unexpected "p2"
    CHECK(error_of("{\"builtin\" \"p2\"}") == "in.json:1:15: invalid JSON");
}

TEST_CASE("load_pair sources") {
    std::istringstream in(R"j({"builtin": "p1(2)"})j");
    CHECK(load_pair("-", in).points().size() == 3);
    std::istringstream none;
    CHECK(load_pair("hirzebruch(1,1,1)", none).facet_count() == 4);
    CHECK_THROWS_AS(load_pair("no/such/file.json", none), PairSpecError);
}
