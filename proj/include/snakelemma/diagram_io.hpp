#pragma once

// JSON diagram files:
//   {"groups": {"A": {"gens": 1, "relations": [[4]]}, ...},
//    "maps":   {"f": {"from": "A", "to": "B", "matrix": [[2]]}, ...},
//    "diagram": {"kind": "snake", "f": "f", "g": "g", ...}}
// Relations are columns of length gens; matrices are row-major with
// to.gens rows and from.gens columns. Integers may be JSON numbers or
// decimal strings.

#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "snakelemma/abgroup.hpp"
#include "snakelemma/four.hpp"
#include "snakelemma/snake.hpp"

namespace snakelemma {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent input. position is "line L, column C" for
/// syntax errors and a JSON pointer for everything else.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string position, const std::string& message)
        : std::runtime_error(message), position_(std::move(position)) {}
    const std::string& position() const noexcept { return position_; }

private:
    std::string position_;
};

inline const std::vector<std::string>& snake_roles() {
    static const std::vector<std::string> r{"f", "g", "f1", "g1", "alpha", "beta", "gamma"};
    return r;
}
inline const std::vector<std::string>& four_roles() {
    static const std::vector<std::string> r{"f", "g", "h", "f1", "g1", "h1", "alpha", "beta", "gamma", "delta"};
    return r;
}
inline const std::vector<std::string>& ring_roles() {
    static const std::vector<std::string> r{"alpha", "beta"};
    return r;
}

struct GroupDecl {
    std::string name;
    FpAbGroup group;
};

struct MapDecl {
    std::string name, from, to;
    Hom hom;
};

struct DiagramFile {
    std::vector<GroupDecl> groups;
    std::vector<MapDecl> maps;
    std::string kind; ///< snake | four | ring
    std::vector<std::pair<std::string, std::string>> roles;

    const MapDecl* find_map(const std::string& name) const {
        for (const auto& m : maps)
            if (m.name == name)
                return &m;
        return nullptr;
    }
    const Hom& role(const std::string& r) const {
        for (const auto& [k, v] : roles)
            if (k == r)
                return find_map(v)->hom;
        throw ContractViolation("DiagramFile: no binding for role " + r);
    }
};

namespace io_detail {

inline std::string pointer_join(const std::string& base, const std::string& key) {
    std::string esc;
    for (char ch : key) {
        if (ch == '~')
            esc += "~0";
        else if (ch == '/')
            esc += "~1";
        else
            esc += ch;
    }
    return base + "/" + esc;
}

inline std::string pointer_join(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

inline std::string line_column(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline bool is_decimal(const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

inline Int parse_int(const Json& j, const std::string& at) {
    if (j.is_number_integer())
        return j.is_number_unsigned() ? Int(std::to_string(j.get<std::uint64_t>()))
                                      : Int(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (!is_decimal(s))
            throw ParseError(at, "expected a decimal integer, got \"" + s + "\"");
        if (s[0] == '+')
            s.erase(0, 1);
        return Int(s, 10);
    }
    throw ParseError(at, std::string("expected an integer, got ") + j.type_name());
}

inline std::size_t parse_count(const Json& j, const std::string& at) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
        throw ParseError(at, "expected a non-negative integer");
    const auto n = j.get<std::uint64_t>();
    if (n > 4096)
        throw ParseError(at, "generator count too large");
    return static_cast<std::size_t>(n);
}

inline const Json& member(const Json& obj, const char* key, const std::string& at) {
    if (!obj.is_object())
        throw ParseError(at, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(at, std::string("missing key \"") + key + "\"");
    return *it;
}

inline const Json& array_at(const Json& j, const std::string& at) {
    if (!j.is_array())
        throw ParseError(at, std::string("expected an array, got ") + j.type_name());
    return j;
}

inline void only_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& at) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const auto& a : allowed)
            known = known || a == it.key();
        if (!known)
            throw ParseError(pointer_join(at, it.key()), "unknown key \"" + it.key() + "\"");
    }
}

inline Json int_json(const Int& x) {
    if (x.fits_slong_p())
        return Json(static_cast<std::int64_t>(x.get_si()));
    return Json(x.get_str());
}

} // namespace io_detail

inline DiagramFile parse_diagram(const Json& root) {
    using namespace io_detail;
    if (!root.is_object())
        throw ParseError("", "top level must be an object");
    only_keys(root, {"groups", "maps", "diagram"}, "");
    DiagramFile out;

    const Json& groups = member(root, "groups", "");
    if (!groups.is_object())
        throw ParseError("/groups", "expected an object");
    for (auto it = groups.begin(); it != groups.end(); ++it) {
        const std::string at = pointer_join("/groups", it.key());
        only_keys(*it, {"gens", "relations"}, at);
        const std::size_t n = parse_count(member(*it, "gens", at), pointer_join(at, "gens"));
        std::vector<Vector> cols;
        if (it->contains("relations")) {
            const std::string rat = pointer_join(at, "relations");
            const Json& rel = array_at((*it)["relations"], rat);
            for (std::size_t c = 0; c < rel.size(); ++c) {
                const std::string cat = pointer_join(rat, c);
                const Json& col = array_at(rel[c], cat);
                if (col.size() != n)
                    throw ParseError(cat, "relation column has length " + std::to_string(col.size()) +
                                              ", expected " + std::to_string(n));
                Vector v(n);
                for (std::size_t i = 0; i < n; ++i)
                    v[i] = parse_int(col[i], pointer_join(cat, i));
                cols.push_back(std::move(v));
            }
        }
        out.groups.push_back({it.key(), make_group(n, cols)});
    }
    auto group_named = [&](const Json& j, const std::string& at) -> const GroupDecl& {
        if (!j.is_string())
            throw ParseError(at, "expected a group name");
        for (const auto& g : out.groups)
            if (g.name == j.get<std::string>())
                return g;
        throw ParseError(at, "unknown group \"" + j.get<std::string>() + "\"");
    };

    const Json& maps = member(root, "maps", "");
    if (!maps.is_object())
        throw ParseError("/maps", "expected an object");
    for (auto it = maps.begin(); it != maps.end(); ++it) {
        const std::string at = pointer_join("/maps", it.key());
        only_keys(*it, {"from", "to", "matrix"}, at);
        const GroupDecl& from = group_named(member(*it, "from", at), pointer_join(at, "from"));
        const GroupDecl& to = group_named(member(*it, "to", at), pointer_join(at, "to"));
        const std::string mat = pointer_join(at, "matrix");
        const Json& rows = array_at(member(*it, "matrix", at), mat);
        const std::size_t r = to.group.n_gens(), c = from.group.n_gens();
        if (rows.size() != r)
            throw ParseError(mat, "matrix has " + std::to_string(rows.size()) + " rows, expected " +
                                      std::to_string(r) + " (gens of \"" + to.name + "\")");
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            const std::string rat = pointer_join(mat, i);
            const Json& row = array_at(rows[i], rat);
            if (row.size() != c)
                throw ParseError(rat, "row has " + std::to_string(row.size()) + " entries, expected " +
                                          std::to_string(c) + " (gens of \"" + from.name + "\")");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = parse_int(row[j], pointer_join(rat, j));
        }
        try {
            out.maps.push_back({it.key(), from.name, to.name, make_hom(from.group, to.group, m)});
        } catch (const IllDefined& e) {
            throw ParseError(at, std::string("map is not well defined: ") + e.what());
        }
    }

    const Json& diagram = member(root, "diagram", "");
    const Json& kind = member(diagram, "kind", "/diagram");
    if (!kind.is_string())
        throw ParseError("/diagram/kind", "expected a string");
    out.kind = kind.get<std::string>();
    const std::vector<std::string>* roles = nullptr;
    if (out.kind == "snake")
        roles = &snake_roles();
    else if (out.kind == "four")
        roles = &four_roles();
    else if (out.kind == "ring")
        roles = &ring_roles();
    else
        throw ParseError("/diagram/kind", "unknown diagram kind \"" + out.kind + "\"");
    std::vector<std::string> allowed = *roles;
    allowed.push_back("kind");
    only_keys(diagram, allowed, "/diagram");
    for (const auto& r : *roles) {
        const std::string at = pointer_join("/diagram", r);
        const Json& name = member(diagram, r.c_str(), "/diagram");
        if (!name.is_string())
            throw ParseError(at, "expected a map name");
        if (!out.find_map(name.get<std::string>()))
            throw ParseError(at, "unknown map \"" + name.get<std::string>() + "\"");
        out.roles.emplace_back(r, name.get<std::string>());
    }
    return out;
}

inline DiagramFile parse_diagram(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::string msg = e.what();
        // Drop the library prefix "[json.exception...] parse error at line L, column C: ".
        if (const auto c = msg.find("column "); c != std::string::npos)
            if (const auto p = msg.find(": ", c); p != std::string::npos)
                msg = msg.substr(p + 2);
        throw ParseError(io_detail::line_column(text, e.byte), msg);
    }
    return parse_diagram(root);
}

inline Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(io_detail::int_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Presentation as stored: generator count and canonical relation columns.
inline Json to_json(const FpAbGroup& g) {
    Json rel = Json::array();
    const IntMatrix& b = g.relations().basis();
    for (std::size_t j = 0; j < b.cols(); ++j) {
        Json col = Json::array();
        for (std::size_t i = 0; i < b.rows(); ++i)
            col.push_back(io_detail::int_json(b(i, j)));
        rel.push_back(std::move(col));
    }
    return Json{{"gens", g.n_gens()}, {"relations", std::move(rel)}};
}

inline Json to_json(const DiagramFile& f) {
    Json groups = Json::object(), maps = Json::object(), diagram = Json::object();
    for (const auto& g : f.groups)
        groups[g.name] = to_json(g.group);
    for (const auto& m : f.maps)
        maps[m.name] = Json{{"from", m.from}, {"to", m.to}, {"matrix", to_json(m.hom.matrix())}};
    diagram["kind"] = f.kind;
    for (const auto& [r, name] : f.roles)
        diagram[r] = name;
    return Json{{"groups", std::move(groups)}, {"maps", std::move(maps)}, {"diagram", std::move(diagram)}};
}

inline std::string serialize(const DiagramFile& f) { return to_json(f).dump(2) + "\n"; }

inline SnakeDiagram snake_of(const DiagramFile& f) {
    detail::require(f.kind == "snake", "snake_of: diagram kind is " + f.kind);
    return SnakeDiagram{f.role("f"),     f.role("g"),    f.role("f1"),   f.role("g1"),
                        f.role("alpha"), f.role("beta"), f.role("gamma")};
}

inline FourDiagram four_of(const DiagramFile& f) {
    detail::require(f.kind == "four", "four_of: diagram kind is " + f.kind);
    return FourDiagram{f.role("f"),     f.role("g"),    f.role("h"),     f.role("f1"),   f.role("g1"),
                       f.role("h1"),    f.role("alpha"), f.role("beta"), f.role("gamma"), f.role("delta")};
}

inline std::pair<Hom, Hom> ring_of(const DiagramFile& f) {
    detail::require(f.kind == "ring", "ring_of: diagram kind is " + f.kind);
    return {f.role("alpha"), f.role("beta")};
}

namespace io_detail {

/// Names each position of a diagram; maps are named after their roles.
inline DiagramFile assemble(std::string kind, const std::vector<std::pair<std::string, FpAbGroup>>& groups,
                            const std::vector<std::tuple<std::string, Hom, std::string, std::string>>& maps) {
    DiagramFile f;
    f.kind = std::move(kind);
    for (const auto& [n, g] : groups)
        f.groups.push_back({n, g});
    for (const auto& [role, h, from, to] : maps) {
        f.maps.push_back({role, from, to, h});
        f.roles.emplace_back(role, role);
    }
    return f;
}

} // namespace io_detail

inline DiagramFile file_of(const SnakeDiagram& d) {
    return io_detail::assemble("snake",
                               {{"A", d.a()}, {"B", d.b()}, {"C", d.c()}, {"A1", d.a1()}, {"B1", d.b1()}, {"C1", d.c1()}},
                               {{"f", d.f, "A", "B"},
                                {"g", d.g, "B", "C"},
                                {"f1", d.f1, "A1", "B1"},
                                {"g1", d.g1, "B1", "C1"},
                                {"alpha", d.alpha, "A", "A1"},
                                {"beta", d.beta, "B", "B1"},
                                {"gamma", d.gamma, "C", "C1"}});
}

inline DiagramFile file_of(const FourDiagram& d) {
    return io_detail::assemble("four",
                               {{"A", d.a()},
                                {"B", d.b()},
                                {"C", d.c()},
                                {"D", d.d()},
                                {"A1", d.a1()},
                                {"B1", d.b1()},
                                {"C1", d.c1()},
                                {"D1", d.d1()}},
                               {{"f", d.f, "A", "B"},
                                {"g", d.g, "B", "C"},
                                {"h", d.h, "C", "D"},
                                {"f1", d.f1, "A1", "B1"},
                                {"g1", d.g1, "B1", "C1"},
                                {"h1", d.h1, "C1", "D1"},
                                {"alpha", d.alpha, "A", "A1"},
                                {"beta", d.beta, "B", "B1"},
                                {"gamma", d.gamma, "C", "C1"},
                                {"delta", d.delta, "D", "D1"}});
}

inline DiagramFile file_of(const Hom& alpha, const Hom& beta) {
    return io_detail::assemble("ring", {{"A", alpha.source()}, {"B", alpha.target()}, {"C", beta.target()}},
                               {{"alpha", alpha, "A", "B"}, {"beta", beta, "B", "C"}});
}

} // namespace snakelemma
