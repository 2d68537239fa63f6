#include "hkd/pairspec.hpp"

#include "hkd/catalog.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace hkd {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& path, const std::string& what) {
    throw PairSpecError(source + ": " + (path.empty() ? "document" : path) + ": " + what);
}

std::int64_t get_int(const json& j, const std::string& source, const std::string& path) {
    if (!j.is_number_integer()) fail(source, path, "expected an integer");
    return j.get<std::int64_t>();
}

LatticeVector get_vector(const json& j, const std::string& source, const std::string& path, int dim) {
    if (!j.is_array()) fail(source, path, "expected an array of integers");
    if (static_cast<int>(j.size()) != dim)
        fail(source, path, "expected " + std::to_string(dim) + " coordinates, got " + std::to_string(j.size()));
    LatticeVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_int(j[i], source, path + "[" + std::to_string(i) + "]"));
    return v;
}

ToricPair from_json(const json& doc, const std::string& source, const std::string& at) {
    auto path = [&](const std::string& key) { return at.empty() ? key : at + "." + key; };
    if (!doc.is_object()) fail(source, at, "expected an object");

    int kinds = int(doc.contains("builtin")) + int(doc.contains("polytope")) + int(doc.contains("segre"));
    if (kinds != 1) fail(source, at, "needs exactly one of \"builtin\", \"polytope\", \"segre\"");

    std::vector<std::string> names;
    if (doc.contains("facet_names")) {
        const json& n = doc.at("facet_names");
        if (!n.is_array()) fail(source, path("facet_names"), "expected an array of strings");
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (!n[i].is_string()) fail(source, path("facet_names") + "[" + std::to_string(i) + "]", "expected a string");
            names.push_back(n[i].get<std::string>());
        }
    }

    try {
        if (doc.contains("builtin")) {
            const json& b = doc.at("builtin");
            if (!b.is_string()) fail(source, path("builtin"), "expected a string");
            std::string text = b.get<std::string>();
            if (doc.contains("params")) {
                const json& p = doc.at("params");
                if (!p.is_array()) fail(source, path("params"), "expected an array of integers");
                text += "(";
                for (std::size_t i = 0; i < p.size(); ++i) {
                    if (i) text += ",";
                    text += std::to_string(get_int(p[i], source, path("params") + "[" + std::to_string(i) + "]"));
                }
                text += ")";
            }
            ToricPair t = builtin(text);
            if (!names.empty()) t = from_polytope(t.polytope(), names);
            return t;
        }
        if (doc.contains("segre")) {
            const json& s = doc.at("segre");
            if (!s.is_array() || s.size() != 2) fail(source, path("segre"), "expected an array of two pair documents");
            ToricPair a = from_json(s[0], source, path("segre") + "[0]");
            ToricPair b = from_json(s[1], source, path("segre") + "[1]");
            return segre(a, b);
        }

        const json& p = doc.at("polytope");
        const std::string pp = path("polytope");
        if (!p.is_object()) fail(source, pp, "expected an object");
        if (!p.contains("dim")) fail(source, pp + ".dim", "missing");
        int dim = static_cast<int>(get_int(p.at("dim"), source, pp + ".dim"));
        if (dim < 1 || dim > 2) fail(source, pp + ".dim", "only dimensions 1 and 2 are supported");
        PolytopeSpec spec;
        spec.dim = dim;
        if (p.contains("vertices") == p.contains("halfspaces"))
            fail(source, pp, "needs exactly one of \"vertices\", \"halfspaces\"");
        if (p.contains("vertices")) {
            spec.kind = PolytopeSpec::Kind::Vertices;
            const json& vs = p.at("vertices");
            if (!vs.is_array()) fail(source, pp + ".vertices", "expected an array");
            for (std::size_t i = 0; i < vs.size(); ++i)
                spec.vertices.push_back(get_vector(vs[i], source, pp + ".vertices[" + std::to_string(i) + "]", dim));
        } else {
            spec.kind = PolytopeSpec::Kind::Halfspaces;
            const json& hs = p.at("halfspaces");
            if (!hs.is_array()) fail(source, pp + ".halfspaces", "expected an array");
            for (std::size_t i = 0; i < hs.size(); ++i) {
                const std::string hp = pp + ".halfspaces[" + std::to_string(i) + "]";
                if (!hs[i].is_object() || !hs[i].contains("normal") || !hs[i].contains("offset"))
                    fail(source, hp, "expected {\"normal\": [...], \"offset\": n}");
                spec.halfspaces.push_back({get_vector(hs[i].at("normal"), source, hp + ".normal", dim),
                                           get_int(hs[i].at("offset"), source, hp + ".offset")});
            }
        }
        try {
            return from_polytope(make_polytope(spec), names);
        } catch (const GeometryError& e) {
            fail(source, pp, e.what());
        }
    } catch (const PairSpecError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        fail(source, at, e.what());
    }
}

std::string read_all(std::istream& in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

ToricPair parse_pair_document(const std::string& text, const std::string& source) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw PairSpecError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
    return from_json(doc, source, "");
}

ToricPair load_pair(const std::string& arg, std::istream& in) {
    if (arg == "-") return parse_pair_document(read_all(in), "<stdin>");
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream f(arg);
        if (!f) throw PairSpecError(arg + ": cannot open");
        return parse_pair_document(read_all(f), arg);
    }
    try {
        return builtin(arg);
    } catch (const CatalogError& e) {
        throw PairSpecError(std::string(e.what()) + " (and no file named '" + arg + "')");
    }
}

}  // namespace hkd
