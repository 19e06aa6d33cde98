/**
 * JSON documents holding named groups, complexes, morphisms, homotopies and
 * butterflies. Names are scoped to one document.
 *
 *   groups      NAME: {elements, table, identity}
 *                   | {permutation_generators, degree}
 *                   | {cyclic: n}
 *   complexes   NAME: {n, groups: [C_1..C_n], boundaries: [∂_2..∂_n],
 *                      actions: [C_1 on C_2 .. C_1 on C_n]}
 *               a boundary is an index array over its source; an action is
 *               a table t[x][a] = x^a or "trivial" / "conjugation"
 *   morphisms   NAME: {source, target, maps: [f_1..f_m]}
 *   homotopies  NAME: {base, phi: [φ_1..φ_m]}   (φ_k: C_k -> D_{k+1})
 *   butterflies NAME: {n, E, H, G, p, f, alpha, beta}
 *               p and f are morphisms E -> H, E -> G given in degrees < n
 */
#ifndef XCB_DOCUMENT_HPP
#define XCB_DOCUMENT_HPP

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "xcb/butterfly.hpp"

namespace xcb {

using json = nlohmann::ordered_json;

struct Document {
    std::map<std::string, FinGroup> groups;
    std::map<std::string, ReducedCrossedComplex> complexes;
    std::map<std::string, ComplexMorphism> morphisms;
    std::map<std::string, PointedHomotopy> homotopies;
    std::map<std::string, NButterfly> butterflies;

    bool empty() const
    {
        return groups.empty() && complexes.empty() && morphisms.empty() && homotopies.empty() && butterflies.empty();
    }
};

namespace detail {

template <class T>
const T& lookup(const std::map<std::string, T>& m, const std::string& name, const std::string& where)
{
    auto it = m.find(name);
    if (it == m.end())
        throw Error(Errc::UnresolvedReference, where + ": unknown name '" + name + "'");
    return it->second;
}

inline const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(Errc::ParseError, where + ": missing key '" + key + "'");
    return j.at(key);
}

inline bool is_index(const json& v) { return v.is_number_integer() && v.get<long long>() >= 0; }

inline std::vector<Elem> index_array(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw Error(Errc::ParseError, where + ": expected an index array");
    std::vector<Elem> out;
    for (const auto& v : j) {
        if (!is_index(v))
            throw Error(Errc::ParseError, where + ": expected a non-negative integer, got " + v.dump());
        out.push_back(v.get<Elem>());
    }
    return out;
}

/// Runs `f`, re-raising construction errors as ValidationFailed at `where`.
template <class F>
auto validated(const std::string& where, F&& f)
{
    try {
        return f();
    }
    catch (const Error& e) {
        if (e.code() == Errc::ParseError || e.code() == Errc::UnresolvedReference
            || e.code() == Errc::ValidationFailed || e.code() == Errc::OrderCapExceeded
            || e.code() == Errc::ClosureBoundExceeded || e.code() == Errc::SearchCapExceeded)
            throw;
        throw Error(Errc::ValidationFailed, where + ": " + e.what());
    }
}

inline void require_ok(const Report& r, const std::string& where)
{
    if (!r.ok())
        throw Error(Errc::ValidationFailed, where + ": " + r.failures().front().check + " at "
                                                + r.failures().front().witness);
}

/**
 * A group table repeats no entry in any row or column. On failure names a
 * cell whose value repeats in both its row and its column (the culprit of a
 * single-cell change), else the first repeated pair.
 */
inline void check_latin(const std::vector<std::vector<Elem>>& rows, const std::string& where)
{
    const auto n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n || std::any_of(r.begin(), r.end(), [&](Elem v) { return v >= n; }))
            return;
    auto cell = [&](std::size_t r, std::size_t c) {
        return "table[" + std::to_string(r) + "][" + std::to_string(c) + "]";
    };
    auto in_row = [&](std::size_t r, std::size_t c) -> std::optional<std::size_t> {
        for (std::size_t c2 = 0; c2 < n; ++c2)
            if (c2 != c && rows[r][c2] == rows[r][c])
                return c2;
        return std::nullopt;
    };
    auto in_col = [&](std::size_t r, std::size_t c) -> std::optional<std::size_t> {
        for (std::size_t r2 = 0; r2 < n; ++r2)
            if (r2 != r && rows[r2][c] == rows[r][c])
                return r2;
        return std::nullopt;
    };
    std::optional<std::string> first;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            auto cr = in_row(r, c);
            auto rc = in_col(r, c);
            auto v = std::to_string(rows[r][c]);
            if (cr && rc)
                throw Error(Errc::ValidationFailed, where + ": " + cell(r, c) + " = " + v + " repeats "
                                                        + cell(r, *cr) + " and " + cell(*rc, c));
            if (!first && cr)
                first = cell(r, c) + " = " + v + " repeats " + cell(r, *cr);
            if (!first && rc)
                first = cell(r, c) + " = " + v + " repeats " + cell(*rc, c);
        }
    if (first)
        throw Error(Errc::ValidationFailed, where + ": " + *first);
}

inline FinGroup parse_group(const json& j, const std::string& where, const Caps& caps)
{
    if (!j.is_object())
        throw Error(Errc::ParseError, where + ": expected an object");
    if (j.contains("cyclic")) {
        auto n = j.at("cyclic");
        if (!is_index(n) || n.get<std::size_t>() == 0)
            throw Error(Errc::ParseError, where + ".cyclic: expected a positive integer");
        if (n.get<std::size_t>() > caps.order)
            throw Error(Errc::OrderCapExceeded, where + ": cyclic group of order " + n.dump() + " exceeds cap");
        return cyclic_group(n.get<std::size_t>());
    }
    if (j.contains("permutation_generators")) {
        const auto& gens = j.at("permutation_generators");
        auto deg = field(j, "degree", where);
        if (!gens.is_array() || !is_index(deg))
            throw Error(Errc::ParseError, where + ": permutation generators need an array and a degree");
        std::vector<Perm> ps;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto a = index_array(gens[i], where + ".permutation_generators[" + std::to_string(i) + "]");
            ps.emplace_back(a.begin(), a.end());
        }
        return validated(where, [&] { return group_from_permutations(ps, deg.get<std::size_t>(), caps); });
    }
    const auto& t = field(j, "table", where);
    if (!t.is_array())
        throw Error(Errc::ParseError, where + ".table: expected an array of rows");
    std::vector<std::vector<Elem>> rows;
    for (std::size_t i = 0; i < t.size(); ++i)
        rows.push_back(index_array(t[i], where + ".table[" + std::to_string(i) + "]"));
    std::vector<std::string> labels;
    if (j.contains("elements")) {
        const auto& e = j.at("elements");
        if (!e.is_array())
            throw Error(Errc::ParseError, where + ".elements: expected an array");
        for (const auto& v : e)
            labels.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        if (labels.size() != rows.size())
            throw Error(Errc::ParseError, where + ": " + std::to_string(labels.size()) + " elements but "
                                              + std::to_string(rows.size()) + " table rows");
    }
    Elem id = 0;
    if (j.contains("identity")) {
        const auto& v = j.at("identity");
        if (is_index(v))
            id = v.get<Elem>();
        else if (v.is_string()) {
            auto it = std::find(labels.begin(), labels.end(), v.get<std::string>());
            if (it == labels.end())
                throw Error(Errc::UnresolvedReference, where + ".identity: unknown element " + v.dump());
            id = static_cast<Elem>(it - labels.begin());
        }
        else
            throw Error(Errc::ParseError, where + ".identity: expected an index or element label");
    }
    check_latin(rows, where);
    return validated(where, [&] { return FinGroup::from_table(rows, id, labels, caps); });
}

inline RightAction parse_action(const json& j, const FinGroup& actor, const FinGroup& module, const std::string& where)
{
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "trivial")
            return RightAction::trivial(actor, module);
        if (s == "conjugation") {
            if (!(actor == module))
                throw Error(Errc::ValidationFailed, where + ": conjugation needs the module to be C_1");
            return RightAction::conjugation(actor);
        }
        throw Error(Errc::ParseError, where + ": unknown action '" + s + "'");
    }
    if (!j.is_array() || j.size() != module.order())
        throw Error(Errc::ParseError, where + ": expected " + std::to_string(module.order()) + " rows");
    std::vector<Elem> t;
    for (std::size_t x = 0; x < j.size(); ++x) {
        auto row = index_array(j[x], where + "[" + std::to_string(x) + "]");
        if (row.size() != actor.order())
            throw Error(Errc::ParseError, where + "[" + std::to_string(x) + "]: expected "
                                              + std::to_string(actor.order()) + " entries");
        t.insert(t.end(), row.begin(), row.end());
    }
    return validated(where, [&] { return RightAction(actor, module, std::move(t)); });
}

inline ReducedCrossedComplex parse_complex(const json& j, const Document& doc, const std::string& where)
{
    const auto& gs = field(j, "groups", where);
    if (!gs.is_array() || gs.empty())
        throw Error(Errc::ParseError, where + ".groups: expected a non-empty array of group names");
    std::vector<FinGroup> groups;
    for (const auto& g : gs) {
        if (!g.is_string())
            throw Error(Errc::ParseError, where + ".groups: expected group names");
        groups.push_back(lookup(doc.groups, g.get<std::string>(), where + ".groups"));
    }
    const std::size_t n = groups.size();
    if (j.contains("n") && (!is_index(j.at("n")) || j.at("n").get<std::size_t>() != n))
        throw Error(Errc::ParseError, where + ".n: does not match the number of groups");
    std::vector<GroupHom> bnd;
    std::vector<RightAction> act;
    const json none = json::array();
    const auto& bs = n >= 2 ? field(j, "boundaries", where) : (j.contains("boundaries") ? j.at("boundaries") : none);
    if (!bs.is_array() || bs.size() != n - 1)
        throw Error(Errc::ParseError, where + ".boundaries: expected " + std::to_string(n - 1) + " maps");
    const json* as = j.contains("actions") ? &j.at("actions") : nullptr;
    if (as && (!as->is_array() || as->size() != n - 1))
        throw Error(Errc::ParseError, where + ".actions: expected " + std::to_string(n - 1) + " actions");
    for (std::size_t k = 2; k <= n; ++k) {
        const auto w = where + ".boundaries[" + std::to_string(k - 2) + "]";
        auto m = index_array(bs[k - 2], w);
        bnd.push_back(validated(w, [&] { return GroupHom(groups[k - 1], groups[k - 2], std::move(m)); }));
        const auto wa = where + ".actions[" + std::to_string(k - 2) + "]";
        act.push_back(as ? parse_action((*as)[k - 2], groups[0], groups[k - 1], wa)
                         : RightAction::trivial(groups[0], groups[k - 1]));
    }
    ReducedCrossedComplex c(std::move(groups), std::move(bnd), std::move(act));
    require_ok(validate_complex(c), where);
    return c;
}

inline ComplexMorphism parse_morphism(const json& j, const Document& doc, const std::string& where)
{
    const auto& s = field(j, "source", where);
    const auto& t = field(j, "target", where);
    if (!s.is_string() || !t.is_string())
        throw Error(Errc::ParseError, where + ": source and target must be complex names");
    const auto& src = lookup(doc.complexes, s.get<std::string>(), where + ".source");
    const auto& tgt = lookup(doc.complexes, t.get<std::string>(), where + ".target");
    const auto& ms = field(j, "maps", where);
    if (!ms.is_array())
        throw Error(Errc::ParseError, where + ".maps: expected an array");
    std::vector<GroupHom> maps;
    for (std::size_t k = 1; k <= ms.size(); ++k) {
        const auto w = where + ".maps[" + std::to_string(k - 1) + "]";
        auto m = index_array(ms[k - 1], w);
        maps.push_back(validated(w, [&] { return GroupHom(src.group(k), tgt.group(k), std::move(m)); }));
    }
    auto f = validated(where, [&] { return ComplexMorphism(src, tgt, std::move(maps)); });
    require_ok(validate_morphism(f), where);
    return f;
}

inline PointedHomotopy parse_homotopy(const json& j, const Document& doc, const std::string& where)
{
    const auto& b = field(j, "base", where);
    if (!b.is_string())
        throw Error(Errc::ParseError, where + ".base: expected a morphism name");
    const auto& g = lookup(doc.morphisms, b.get<std::string>(), where + ".base");
    const auto& ps = field(j, "phi", where);
    if (!ps.is_array())
        throw Error(Errc::ParseError, where + ".phi: expected an array");
    MapFamily phi;
    for (std::size_t k = 1; k <= ps.size(); ++k)
        phi.push_back(index_array(ps[k - 1], where + ".phi[" + std::to_string(k - 1) + "]"));
    return validated(where, [&] {
        check_family_shape(g.source(), g.target(), phi);
        return make_homotopy(g, std::move(phi));
    });
}

inline NButterfly parse_butterfly(const json& j, const Document& doc, const std::string& where, const Caps& caps)
{
    auto name = [&](const char* key) {
        const auto& v = field(j, key, where);
        if (!v.is_string())
            throw Error(Errc::ParseError, where + "." + key + ": expected a name");
        return v.get<std::string>();
    };
    NButterfly b;
    const auto& nv = field(j, "n", where);
    if (!is_index(nv) || nv.get<std::size_t>() < 2)
        throw Error(Errc::ParseError, where + ".n: expected an integer >= 2");
    b.n = nv.get<std::size_t>();
    b.E = lookup(doc.complexes, name("E"), where + ".E");
    b.H = lookup(doc.complexes, name("H"), where + ".H");
    b.G = lookup(doc.complexes, name("G"), where + ".G");
    const auto& p = lookup(doc.morphisms, name("p"), where + ".p");
    const auto& f = lookup(doc.morphisms, name("f"), where + ".f");
    validated(where, [&] {
        b.p = retarget(p, b.E, truncate(b.H, b.n - 1));
        b.f = retarget(f, b.E, truncate(b.G, b.n - 1));
        b.alpha = GroupHom(b.H.group(b.n), b.E.group(b.n - 1), index_array(field(j, "alpha", where), where + ".alpha"));
        b.beta = GroupHom(b.G.group(b.n), b.E.group(b.n - 1), index_array(field(j, "beta", where), where + ".beta"));
        return 0;
    });
    require_ok(validate_butterfly(b, caps), where);
    return b;
}

template <class T>
void put_unique(std::map<std::string, T>& m, const std::string& name, T value, const std::string& section)
{
    if (!m.emplace(name, std::move(value)).second)
        throw Error(Errc::ParseError, section + "." + name + ": duplicate name");
}

inline const json& section(const json& j, const char* key)
{
    static const json empty = json::object();
    if (!j.contains(key))
        return empty;
    const auto& s = j.at(key);
    if (!s.is_object())
        throw Error(Errc::ParseError, std::string(key) + ": expected an object of named entries");
    return s;
}

} // namespace detail

/**
 * Builds and validates every object of a parsed document. Errors name the
 * section and key: ParseError for malformed input, UnresolvedReference for
 * unknown names, ValidationFailed for objects that fail their axioms.
 */
inline Document load_document(const json& j, const Caps& caps = {})
{
    if (!j.is_object())
        throw Error(Errc::ParseError, "document: expected a JSON object");
    Document doc;
    for (const auto& [name, g] : detail::section(j, "groups").items())
        detail::put_unique(doc.groups, name, detail::parse_group(g, "groups." + name, caps), "groups");
    for (const auto& [name, c] : detail::section(j, "complexes").items())
        detail::put_unique(doc.complexes, name, detail::parse_complex(c, doc, "complexes." + name), "complexes");
    for (const auto& [name, m] : detail::section(j, "morphisms").items())
        detail::put_unique(doc.morphisms, name, detail::parse_morphism(m, doc, "morphisms." + name), "morphisms");
    for (const auto& [name, h] : detail::section(j, "homotopies").items())
        detail::put_unique(doc.homotopies, name, detail::parse_homotopy(h, doc, "homotopies." + name),
                           "homotopies");
    for (const auto& [name, b] : detail::section(j, "butterflies").items())
        detail::put_unique(doc.butterflies, name, detail::parse_butterfly(b, doc, "butterflies." + name, caps),
                           "butterflies");
    return doc;
}

inline Document parse_document(const std::string& text, const Caps& caps = {})
{
    json j;
    try {
        j = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, std::string("document: ") + e.what());
    }
    return load_document(j, caps);
}

inline Document load_document_file(const std::string& path, const Caps& caps = {})
{
    std::ifstream in(path);
    if (!in)
        throw Error(Errc::ParseError, path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), caps);
}

// --------------------------------------------------------------------------
// Emitting

/**
 * Serializes a document. Groups are written as labelled Cayley tables in
 * their element order; groups used by complexes but missing from
 * doc.groups are named after their first use ("<complex>.<k>").
 */
class DocumentWriter {
public:
    explicit DocumentWriter(const Document& doc) : doc_(doc)
    {
        for (const auto& [name, g] : doc.groups)
            add_group(name, g);
        for (const auto& [name, c] : doc.complexes)
            add_complex(name, c);
    }

    json emit()
    {
        for (const auto& [name, f] : doc_.morphisms)
            out_["morphisms"][name] = morphism_json(f);
        for (const auto& [name, h] : doc_.homotopies)
            out_["homotopies"][name] = homotopy_json(h);
        for (const auto& [name, b] : doc_.butterflies)
            out_["butterflies"][name] = butterfly_json(b);
        json j = json::object();
        for (const char* key : {"groups", "complexes", "morphisms", "homotopies", "butterflies"})
            if (out_.contains(key))
                j[key] = out_[key];
        return j;
    }

private:
    std::string add_group(const std::string& hint, const FinGroup& g)
    {
        for (const auto& [n, h] : groups_)
            if (h == g && h.labels() == g.labels())
                return n;
        auto name = fresh("groups", hint);
        groups_.emplace_back(name, g);
        json t = json::array();
        for (Elem a = 0; a < g.order(); ++a) {
            json row = json::array();
            for (Elem b = 0; b < g.order(); ++b)
                row.push_back(g.mul(a, b));
            t.push_back(row);
        }
        out_["groups"][name] = {{"elements", g.labels()}, {"table", t}, {"identity", g.identity()}};
        return name;
    }

    std::string add_complex(const std::string& name, const ReducedCrossedComplex& c)
    {
        for (const auto& [n, d] : complexes_)
            if (d == c)
                return n;
        complexes_.emplace_back(name, c);
        json gs = json::array(), bs = json::array(), as = json::array();
        for (std::size_t k = 1; k <= c.length(); ++k)
            gs.push_back(add_group(name + "." + std::to_string(k), c.group(k)));
        for (std::size_t k = 2; k <= c.length(); ++k) {
            bs.push_back(c.boundary(k).table());
            const auto& a = c.action(k);
            json t = json::array();
            for (Elem x = 0; x < a.module().order(); ++x) {
                json row = json::array();
                for (Elem y = 0; y < a.actor().order(); ++y)
                    row.push_back(a(x, y));
                t.push_back(row);
            }
            as.push_back(t);
        }
        out_["complexes"][name] = {{"n", c.length()}, {"groups", gs}, {"boundaries", bs}, {"actions", as}};
        return name;
    }

    std::string fresh(const char* key, const std::string& base) const
    {
        auto taken = [&](const std::string& n) {
            return (out_.contains(key) && out_[key].contains(n))
                   || (std::string(key) == "morphisms" && doc_.morphisms.count(n));
        };
        if (!taken(base))
            return base;
        for (std::size_t i = 2;; ++i)
            if (!taken(base + std::to_string(i)))
                return base + std::to_string(i);
    }

    std::string complex_name(const ReducedCrossedComplex& c, const std::string& fallback)
    {
        for (const auto& [n, d] : complexes_)
            if (d == c)
                return n;
        return add_complex(fresh("complexes", fallback), c);
    }

    json morphism_json(const ComplexMorphism& f, const std::string& hint = "X")
    {
        json ms = json::array();
        for (std::size_t k = 1; k <= f.source().length(); ++k)
            ms.push_back(f.map(k).table());
        return {{"source", complex_name(f.source(), hint + ".source")},
                {"target", complex_name(f.target(), hint + ".target")},
                {"maps", ms}};
    }

    std::string morphism_name(const ComplexMorphism& f, const std::string& fallback)
    {
        for (const auto& [n, g] : doc_.morphisms)
            if (g == f)
                return n;
        auto name = fresh("morphisms", fallback);
        out_["morphisms"][name] = morphism_json(f, name);
        return name;
    }

    json homotopy_json(const PointedHomotopy& h)
    {
        json ps = json::array();
        for (const auto& v : h.phi)
            ps.push_back(v);
        return {{"base", morphism_name(h.base, "base")}, {"phi", ps}};
    }

    json butterfly_json(const NButterfly& b)
    {
        auto e = complex_name(b.E, "E");
        auto h = complex_name(b.H, "H");
        auto g = complex_name(b.G, "G");
        std::vector<GroupHom> pm, fm;
        for (std::size_t k = 1; k < b.n; ++k) {
            pm.emplace_back(b.E.group(k), b.H.group(k), b.p.map(k).table());
            fm.emplace_back(b.E.group(k), b.G.group(k), b.f.map(k).table());
        }
        auto p = morphism_name(ComplexMorphism(b.E, b.H, std::move(pm)), "p");
        auto f = morphism_name(ComplexMorphism(b.E, b.G, std::move(fm)), "f");
        return {{"n", b.n}, {"E", e}, {"H", h}, {"G", g}, {"p", p}, {"f", f},
                {"alpha", b.alpha.table()}, {"beta", b.beta.table()}};
    }

    const Document& doc_;
    json out_ = json::object();
    std::vector<std::pair<std::string, FinGroup>> groups_;
    std::vector<std::pair<std::string, ReducedCrossedComplex>> complexes_;
};

inline json emit_document(const Document& doc) { return DocumentWriter(doc).emit(); }

} // namespace xcb

#endif
