#include "hkd/catalog.hpp"

#include "hkd/expr.hpp"

#include "json.hpp"

#include <cctype>
#include <string_view>

namespace hkd {
namespace detail {
extern const std::string_view kReferenceTables;
}

ToricPair p1(std::int64_t l) {
    if (l < 1) throw CatalogError("p1(l) needs l >= 1");
    return from_polytope(LatticePolytope::from_vertices({{0}, {l}}, 1));
}

ToricPair p2() { return from_polytope(LatticePolytope::from_vertices({{0, 0}, {1, 0}, {0, 1}}, 2)); }

ToricPair hirzebruch(std::int64_t a, std::int64_t c, std::int64_t d) {
    if (a < 0) throw CatalogError("hirzebruch(a,c,d) needs a >= 0");
    if (c <= 0 || d <= 0) throw CatalogError("hirzebruch(a,c,d) is not ample unless c, d > 0");
    std::vector<Halfspace> hs{{{1, 0}, c}, {{0, 1}, 0}, {{-1, a}, 0}, {{0, -1}, d}};
    return from_polytope(LatticePolytope::from_halfspaces(hs, 2));
}

namespace {

struct Call {
    std::string name;
    std::vector<std::int64_t> ints;
    std::vector<Call> pairs;
};

class CallParser {
public:
    explicit CallParser(const std::string& s) : s_(s) {}

    Call run() {
        Call c = call();
        skip();
        if (i_ != s_.size()) fail("trailing characters");
        return c;
    }

private:
    [[noreturn]] void fail(const std::string& what) {
        throw CatalogError("cannot parse builtin '" + s_ + "': " + what + " at position " + std::to_string(i_));
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    Call call() {
        skip();
        Call c;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
            c.name += s_[i_++];
        if (c.name.empty()) fail("expected a name");
        skip();
        if (i_ < s_.size() && s_[i_] == '(') {
            ++i_;
            while (true) {
                skip();
                if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '-')) {
                    std::size_t start = i_++;
                    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
                    try {
                        c.ints.push_back(std::stoll(s_.substr(start, i_ - start)));
                    } catch (const std::exception&) {
                        fail("bad integer");
                    }
                } else {
                    c.pairs.push_back(call());
                }
                skip();
                if (i_ < s_.size() && s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                if (i_ < s_.size() && s_[i_] == ')') {
                    ++i_;
                    break;
                }
                fail("expected ',' or ')'");
            }
        }
        return c;
    }

    const std::string& s_;
    std::size_t i_ = 0;
};

ToricPair build(const Call& c) {
    auto want = [&](std::size_t ints, std::size_t pairs) {
        if (c.ints.size() != ints || c.pairs.size() != pairs)
            throw CatalogError("wrong arguments for builtin '" + c.name + "'");
    };
    if (c.name == "p1") {
        want(1, 0);
        return p1(c.ints[0]);
    }
    if (c.name == "p2") {
        want(0, 0);
        return p2();
    }
    if (c.name == "hirzebruch") {
        want(3, 0);
        return hirzebruch(c.ints[0], c.ints[1], c.ints[2]);
    }
    if (c.name == "segre") {
        want(0, 2);
        return segre(build(c.pairs[0]), build(c.pairs[1]));
    }
    throw CatalogError("unknown builtin '" + c.name + "' (expected p1(l), p2, hirzebruch(a,c,d), segre(X,Y))");
}

using nlohmann::json;

const json& tables() {
    static const json doc = json::parse(detail::kReferenceTables);
    return doc;
}

const json& entry_json(const std::string& name) {
    for (const auto& e : tables().at("entries"))
        if (e.at("name") == name) return e;
    throw CatalogError("no reference entry '" + name + "'");
}

PiecewisePolynomial rows_to_profile(const json& rows, const std::map<std::string, Rational>& params,
                                    const std::string& where) {
    std::vector<Piece> pieces;
    Rational at(0);
    for (const auto& row : rows) {
        Rational lo, hi;
        Polynomial value;
        try {
            lo = parse_constant(row.at(0).get<std::string>(), params);
            hi = parse_constant(row.at(1).get<std::string>(), params);
            value = parse_expr(row.at(2).get<std::string>(), params);
        } catch (const ExprError& e) {
            throw CatalogError(where + ": " + e.what());
        }
        if (lo != at) throw CatalogError(where + ": rows are not contiguous at " + to_string(lo));
        if (hi < lo) throw CatalogError(where + ": row [" + to_string(lo) + ", " + to_string(hi) + ") is reversed");
        pieces.push_back({lo, hi, value});
        at = hi;
    }
    return PiecewisePolynomial::from_pieces(pieces);
}

}  // namespace

ToricPair builtin(const std::string& text) { return build(CallParser(text).run()); }

std::vector<std::string> catalog_pairs() {
    return {"p1(1)",
            "p1(2)",
            "p1(3)",
            "p1(5)",
            "p2",
            "hirzebruch(1,1,1)",
            "hirzebruch(1,2,1)",
            "hirzebruch(1,1,2)",
            "hirzebruch(2,3,1)",
            "hirzebruch(2,1,3)",
            "segre(p1(1),p2)"};
}

const std::vector<ReferenceEntry>& reference_entries() {
    static const std::vector<ReferenceEntry> entries = [] {
        std::vector<ReferenceEntry> out;
        for (const auto& e : tables().at("entries")) {
            ReferenceEntry r;
            r.name = e.at("name");
            r.params = e.at("params").get<std::vector<std::string>>();
            for (const auto& [id, _] : e.at("profiles").items()) r.profiles.push_back(id);
            if (e.contains("branches"))
                for (const auto& [b, body] : e.at("branches").items())
                    for (const auto& [id, _] : body.items()) r.branch_profiles[b].push_back(id);
            if (e.contains("scalars"))
                for (const auto& [id, v] : e.at("scalars").items()) r.scalars[id] = v.get<std::string>();
            out.push_back(std::move(r));
        }
        return out;
    }();
    return entries;
}

const ReferenceEntry& reference_entry(const std::string& name) {
    for (const auto& e : reference_entries())
        if (e.name == name) return e;
    throw CatalogError("no reference entry '" + name + "'");
}

PiecewisePolynomial reference_profile(const std::string& name, const std::map<std::string, Rational>& params,
                                      const std::string& id, const std::string& branch) {
    const json& e = entry_json(name);
    for (const auto& p : e.at("params")) {
        if (!params.count(p.get<std::string>()))
            throw CatalogError("reference '" + name + "' needs parameter " + p.get<std::string>());
    }
    const json* body = nullptr;
    if (e.at("profiles").contains(id)) {
        body = &e.at("profiles").at(id);
    } else if (e.contains("branches")) {
        if (branch.empty()) throw CatalogError("reference '" + name + "/" + id + "' needs a branch");
        if (!e.at("branches").contains(branch)) throw CatalogError("unknown branch '" + branch + "'");
        const json& b = e.at("branches").at(branch);
        if (b.contains(id)) body = &b.at(id);
    }
    if (!body) throw CatalogError("unknown reference id '" + id + "' for '" + name + "'");
    const std::string where = name + "/" + (branch.empty() ? "" : branch + "/") + id;
    if (body->is_object()) {
        Rational factor = parse_constant(body->at("factor").get<std::string>(), params);
        return factor * reference_profile(name, params, body->at("multiple_of").get<std::string>(), branch);
    }
    return rows_to_profile(*body, params, where);
}

Rational reference_scalar(const std::string& name, const std::string& id) {
    const auto& e = reference_entry(name);
    auto it = e.scalars.find(id);
    if (it == e.scalars.end()) throw CatalogError("unknown reference scalar '" + id + "' for '" + name + "'");
    return parse_rational(it->second);
}

std::vector<std::string> hirzebruch_branches(std::int64_t c, std::int64_t d) {
    std::vector<std::string> out;
    if (c >= d) out.push_back("c>=d");
    if (c <= d) out.push_back("c<=d");
    return out;
}

}  // namespace hkd
