#include "io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "orbiloop/catalog.hpp"
#include "orbiloop/error.hpp"
#include "orbiloop/loop.hpp"

namespace orbiloop::io {

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) { throw SchemaError(ptr, msg); }

const json& expectObject(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
            fail(pointer(ptr, it.key()), "unknown key '" + it.key() + "'");
    return j;
}

void expectSchema(const json& j, const std::string& ptr, const std::string& name) {
    if (!j.contains("schema")) return;
    const auto& s = j.at("schema");
    if (!s.is_string() || s.get<std::string>() != name) fail(pointer(ptr, "schema"), "expected \"" + name + "\"");
}

const json& field(const json& j, const std::string& ptr, const std::string& key) {
    if (!j.contains(key)) fail(pointer(ptr, key), "missing required key '" + key + "'");
    return j.at(key);
}

const json& array(const json& j, const std::string& ptr) {
    if (!j.is_array()) fail(ptr, "expected an array");
    return j;
}

std::string str(const json& j, const std::string& ptr) {
    if (!j.is_string()) fail(ptr, "expected a string");
    auto s = j.get<std::string>();
    if (s.empty()) fail(ptr, "expected a nonempty string");
    return s;
}

int integer(const json& j, const std::string& ptr, int lo, int hi) {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    const auto v = j.get<long long>();
    if (v < lo || v > hi) fail(ptr, "integer out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

/// Unique nonempty names with an index.
std::map<std::string, int> names(const json& j, const std::string& ptr, std::vector<std::string>& out) {
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < array(j, ptr).size(); ++i) {
        auto s = str(j[i], pointer(ptr, i));
        if (!index.emplace(s, static_cast<int>(i)).second) fail(pointer(ptr, i), "duplicate identifier '" + s + "'");
        out.push_back(std::move(s));
    }
    return index;
}

int lookup(const std::map<std::string, int>& index, const json& j, const std::string& ptr, const char* what) {
    const auto s = str(j, ptr);
    const auto it = index.find(s);
    if (it == index.end()) fail(ptr, std::string("unknown ") + what + " '" + s + "'");
    return it->second;
}

std::map<std::string, int> indexOf(const std::vector<std::string>& v) {
    std::map<std::string, int> m;
    for (std::size_t i = 0; i < v.size(); ++i) m.emplace(v[i], static_cast<int>(i));
    return m;
}

/// Sorted vertex list and the sign of the sorting permutation.
std::pair<std::vector<int>, int> orientedSimplex(const json& j, const std::string& ptr, const std::map<std::string, int>& vertices) {
    std::vector<int> v;
    for (std::size_t i = 0; i < array(j, ptr).size(); ++i) v.push_back(lookup(vertices, j[i], pointer(ptr, i), "vertex"));
    if (v.empty()) fail(ptr, "empty simplex");
    int sign = 1;
    for (std::size_t a = 0; a < v.size(); ++a)
        for (std::size_t b = a + 1; b < v.size(); ++b) {
            if (v[a] == v[b]) fail(ptr, "repeated vertex in simplex");
            if (v[a] > v[b]) sign = -sign;
        }
    std::sort(v.begin(), v.end());
    return {v, sign};
}

}  // namespace

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail("", std::string("invalid JSON: ") + e.what());
    }
}

json readFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::string pointer(const std::string& base, const std::string& key) {
    std::string k;
    for (char c : key) {
        if (c == '~') k += "~0";
        else if (c == '/') k += "~1";
        else k += c;
    }
    return base + "/" + k;
}

std::string pointer(const std::string& base, std::size_t index) { return base + "/" + std::to_string(index); }

Rational parseRational(const json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
    if (!j.is_string()) fail(ptr, "expected an integer or a \"p/q\" string");
    static const std::regex re(R"(^(-?[0-9]+)(/([0-9]+))?$)");
    const auto s = j.get<std::string>();
    std::smatch m;
    if (!std::regex_match(s, m, re)) fail(ptr, "malformed fraction '" + s + "'");
    BigInt num(m[1].str()), den(m[3].matched ? m[3].str() : std::string("1"));
    if (den == 0) fail(ptr, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string formatRational(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return toString(c);
}

// --- group.v1 -------------------------------------------------------------------------

gpd::FiniteGroup readGroup(const json& j, const std::string& ptr) {
    expectObject(j, ptr, {"schema", "elements", "table"});
    expectSchema(j, ptr, "group.v1");
    std::vector<std::string> elems;
    const auto index = names(field(j, ptr, "elements"), pointer(ptr, "elements"), elems);
    if (elems.empty()) fail(pointer(ptr, "elements"), "a group needs at least one element");
    const auto tp = pointer(ptr, "table");
    const auto& t = array(field(j, ptr, "table"), tp);
    if (t.size() != elems.size()) fail(tp, "table needs one row per element");
    std::vector<std::vector<int>> table;
    for (std::size_t a = 0; a < t.size(); ++a) {
        const auto rp = pointer(tp, a);
        if (array(t[a], rp).size() != elems.size()) fail(rp, "row needs one entry per element");
        table.emplace_back();
        for (std::size_t b = 0; b < elems.size(); ++b) table.back().push_back(lookup(index, t[a][b], pointer(rp, b), "element"));
    }
    return gpd::FiniteGroup::fromTable(elems, table);
}

json writeGroup(const gpd::FiniteGroup& g) {
    json table = json::array();
    for (int a = 0; a < g.order(); ++a) {
        json row = json::array();
        for (int b = 0; b < g.order(); ++b) row.push_back(g.name(g.mul(a, b)));
        table.push_back(std::move(row));
    }
    return {{"schema", "group.v1"}, {"elements", g.names()}, {"table", std::move(table)}};
}

gpd::GroupPtr readGroupRef(const json& j, const std::string& ptr) {
    if (j.is_string()) {
        const auto g = catalog::group(j.get<std::string>());
        if (!g) fail(ptr, "unknown builtin group '" + j.get<std::string>() + "'");
        return gpd::shareGroup(*g);
    }
    return gpd::shareGroup(readGroup(j, ptr));
}

// --- groupoid.v1 ----------------------------------------------------------------------

gpd::GroupoidPtr readGroupoid(const json& j, const std::string& ptr) {
    expectObject(j, ptr, {"schema", "objects", "morphisms", "compose", "ident", "inv"});
    expectSchema(j, ptr, "groupoid.v1");
    gpd::FiniteGroupoid::Builder b;
    std::vector<std::string> objs;
    const auto objIndex = names(field(j, ptr, "objects"), pointer(ptr, "objects"), objs);
    for (const auto& o : objs) b.addObject(o);

    const auto mp = pointer(ptr, "morphisms");
    const auto& ms = array(field(j, ptr, "morphisms"), mp);
    std::map<std::string, int> morIndex;
    std::vector<std::pair<int, int>> ends;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const auto ip = pointer(mp, i);
        expectObject(ms[i], ip, {"id", "src", "dst"});
        const auto id = str(field(ms[i], ip, "id"), pointer(ip, "id"));
        const int s = lookup(objIndex, field(ms[i], ip, "src"), pointer(ip, "src"), "object");
        const int d = lookup(objIndex, field(ms[i], ip, "dst"), pointer(ip, "dst"), "object");
        if (!morIndex.emplace(id, static_cast<int>(i)).second) fail(pointer(ip, "id"), "duplicate morphism id '" + id + "'");
        b.addMorphism(id, s, d);
        ends.emplace_back(s, d);
    }

    const auto idp = pointer(ptr, "ident");
    const auto& ident = field(j, ptr, "ident");
    if (!ident.is_object()) fail(idp, "expected an object");
    std::vector<bool> hasIdent(objs.size());
    for (auto it = ident.begin(); it != ident.end(); ++it) {
        const auto kp = pointer(idp, it.key());
        const auto o = objIndex.find(it.key());
        if (o == objIndex.end()) fail(kp, "unknown object '" + it.key() + "'");
        const int f = lookup(morIndex, it.value(), kp, "morphism");
        if (ends[f].first != o->second || ends[f].second != o->second) fail(kp, "identity must be an endomorphism of its object");
        b.setIdentity(o->second, f);
        hasIdent[o->second] = true;
    }
    for (std::size_t x = 0; x < objs.size(); ++x)
        if (!hasIdent[x]) fail(pointer(idp, objs[x]), "object has no identity");

    const auto ivp = pointer(ptr, "inv");
    const auto& inv = field(j, ptr, "inv");
    if (!inv.is_object()) fail(ivp, "expected an object");
    std::vector<bool> hasInv(ends.size());
    for (auto it = inv.begin(); it != inv.end(); ++it) {
        const auto kp = pointer(ivp, it.key());
        const auto f = morIndex.find(it.key());
        if (f == morIndex.end()) fail(kp, "unknown morphism '" + it.key() + "'");
        const int g = lookup(morIndex, it.value(), kp, "morphism");
        if (ends[g].first != ends[f->second].second || ends[g].second != ends[f->second].first)
            fail(kp, "inverse must run in the opposite direction");
        b.setInverse(f->second, g);
        hasInv[f->second] = true;
    }
    for (const auto& [id, f] : morIndex)
        if (!hasInv[f]) fail(pointer(ivp, id), "morphism has no inverse");

    const auto cp = pointer(ptr, "compose");
    const auto& comp = array(field(j, ptr, "compose"), cp);
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < comp.size(); ++i) {
        const auto ip = pointer(cp, i);
        if (!comp[i].is_array() || comp[i].size() != 3) fail(ip, "expected [g, f, g o f]");
        const int g = lookup(morIndex, comp[i][0], pointer(ip, 0), "morphism");
        const int f = lookup(morIndex, comp[i][1], pointer(ip, 1), "morphism");
        const int gf = lookup(morIndex, comp[i][2], pointer(ip, 2), "morphism");
        if (ends[f].second != ends[g].first) fail(ip, "pair is not composable (dst f != src g)");
        if (ends[gf].first != ends[f].first || ends[gf].second != ends[g].second) fail(pointer(ip, 2), "composite has the wrong endpoints");
        if (!seen.emplace(g, f).second) fail(ip, "duplicate composition entry");
        b.setCompose(g, f, gf);
    }
    std::size_t pairs = 0;
    for (const auto& [s, d] : ends)
        for (const auto& [s2, d2] : ends)
            if (d2 == s) ++pairs;
    if (seen.size() != pairs) fail(cp, "composition table is not total: " + std::to_string(seen.size()) + " of " + std::to_string(pairs) + " pairs");

    auto g = gpd::share(std::move(b).build());
    const auto report = gpd::validate(*g);
    if (!report.ok) {
        std::string w;
        for (const auto& s : report.witnesses) w += (w.empty() ? "" : ", ") + s;
        throw PreconditionError("groupoid-axioms", report.axiom + " fails at (" + w + ")");
    }
    return g;
}

json writeGroupoid(const gpd::FiniteGroupoid& g) {
    json objs = json::array(), mors = json::array(), comp = json::array(), ident = json::object(), inv = json::object();
    for (int x = 0; x < g.objectCount(); ++x) {
        objs.push_back(g.objectName(x));
        ident[g.objectName(x)] = g.morphism(g.ident(x)).id;
    }
    for (int f = 0; f < g.morphismCount(); ++f) {
        const auto& m = g.morphism(f);
        mors.push_back({{"id", m.id}, {"src", g.objectName(m.src)}, {"dst", g.objectName(m.dst)}});
        inv[m.id] = g.morphism(g.inv(f)).id;
    }
    for (int gg = 0; gg < g.morphismCount(); ++gg)
        for (int f : g.incoming(g.src(gg))) comp.push_back({g.morphism(gg).id, g.morphism(f).id, g.morphism(g.compose(gg, f)).id});
    return {{"schema", "groupoid.v1"}, {"objects", std::move(objs)}, {"morphisms", std::move(mors)},
            {"compose", std::move(comp)}, {"ident", std::move(ident)}, {"inv", std::move(inv)}};
}

gpd::GroupoidPtr readGroupoidRef(const json& j, const std::string& ptr) {
    if (j.is_string()) {
        const auto g = catalog::groupoid(j.get<std::string>());
        if (!g) fail(ptr, "unknown builtin groupoid '" + j.get<std::string>() + "'");
        return *g;
    }
    return readGroupoid(j, ptr);
}

// --- cochain.v1 -----------------------------------------------------------------------

CochainDoc readCochain(const json& j, const std::string& ptr) {
    expectObject(j, ptr, {"schema", "group", "groupoid", "degree", "coeff", "entries"});
    expectSchema(j, ptr, "cochain.v1");
    const bool isGroup = j.contains("group"), isGroupoid = j.contains("groupoid");
    if (isGroup == isGroupoid) fail(ptr, "exactly one of 'group' and 'groupoid' is required");
    const int degree = integer(field(j, ptr, "degree"), pointer(ptr, "degree"), 0, 6);
    cohom::Coeff coeff = cohom::Coeff::QmodZ;
    if (j.contains("coeff")) {
        const auto cp = pointer(ptr, "coeff");
        const auto s = str(j.at("coeff"), cp);
        if (s != "Z" && s != "Q" && s != "QmodZ") fail(cp, "coeff must be one of Z, Q, QmodZ");
        coeff = cohom::parseCoeff(s);
    }
    const auto ep = pointer(ptr, "entries");
    const auto& entries = array(field(j, ptr, "entries"), ep);
    CochainDoc out;
    std::set<std::size_t> seen;
    auto setValue = [&](auto& c, std::size_t index, const json& e, const std::string& ip) {
        if (!seen.insert(index).second) fail(pointer(ip, "args"), "duplicate entry");
        const auto vp = pointer(ip, "value");
        const auto v = parseRational(field(e, ip, "value"), vp);
        if (coeff == cohom::Coeff::Z && v.get_den() != 1) fail(vp, "Z coefficients must be integers");
        c.set(index, v);
    };
    if (isGroup) {
        const auto g = readGroupRef(j.at("group"), pointer(ptr, "group"));
        if (std::pow(static_cast<double>(g->order()), degree) > 5e6) fail(pointer(ptr, "degree"), "cochain table too large");
        cohom::BarCochain c(g, degree, coeff);
        const auto index = indexOf(g->names());
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto ip = pointer(ep, i);
            expectObject(entries[i], ip, {"args", "value"});
            const auto ap = pointer(ip, "args");
            const auto& args = array(field(entries[i], ip, "args"), ap);
            if (static_cast<int>(args.size()) != degree) fail(ap, "expected " + std::to_string(degree) + " arguments");
            std::vector<int> a;
            for (std::size_t k = 0; k < args.size(); ++k) a.push_back(lookup(index, args[k], pointer(ap, k), "element"));
            setValue(c, c.index(a), entries[i], ip);
        }
        out.bar = std::move(c);
    } else {
        const auto g = readGroupoidRef(j.at("groupoid"), pointer(ptr, "groupoid"));
        coc::NerveCochain c(g, degree, coeff);
        std::map<std::string, int> index;
        if (degree == 0)
            for (int x = 0; x < g->objectCount(); ++x) index.emplace(g->objectName(x), x);
        else
            for (int f = 0; f < g->morphismCount(); ++f) index.emplace(g->morphism(f).id, f);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const auto ip = pointer(ep, i);
            expectObject(entries[i], ip, {"args", "value"});
            const auto ap = pointer(ip, "args");
            const auto& args = array(field(entries[i], ip, "args"), ap);
            if (static_cast<int>(args.size()) != std::max(degree, 1)) fail(ap, "expected " + std::to_string(std::max(degree, 1)) + " arguments");
            std::vector<int> a;
            for (std::size_t k = 0; k < args.size(); ++k)
                a.push_back(lookup(index, args[k], pointer(ap, k), degree == 0 ? "object" : "morphism"));
            std::size_t at = 0;
            try {
                at = c.index(a);
            } catch (const PreconditionError&) {
                fail(ap, "arguments are not composable");
            }
            setValue(c, at, entries[i], ip);
        }
        out.nerve = std::move(c);
    }
    return out;
}

json writeCochain(const coc::NerveCochain& c, const json& groupoidRef) {
    json entries = json::array();
    const auto& g = c.groupoid();
    c.forEachTuple([&](std::span<const int> t, std::size_t i) {
        if (sgn(c.at(i)) == 0) return;
        json args = json::array();
        for (int f : t) args.push_back(c.degree() == 0 ? g.objectName(f) : g.morphism(f).id);
        entries.push_back({{"args", std::move(args)}, {"value", formatRational(c.at(i))}});
    });
    return {{"schema", "cochain.v1"}, {"groupoid", groupoidRef}, {"degree", c.degree()},
            {"coeff", cohom::coeffName(c.coeff())}, {"entries", std::move(entries)}};
}

json writeCochain(const cohom::BarCochain& c, const json& groupRef) {
    json entries = json::array();
    std::vector<int> args(static_cast<std::size_t>(c.degree()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (sgn(c.at(i)) == 0) continue;
        c.decode(i, args);
        json a = json::array();
        for (int x : args) a.push_back(c.group().name(x));
        entries.push_back({{"args", std::move(a)}, {"value", formatRational(c.at(i))}});
    }
    return {{"schema", "cochain.v1"}, {"group", groupRef}, {"degree", c.degree()},
            {"coeff", cohom::coeffName(c.coeff())}, {"entries", std::move(entries)}};
}

// --- scomplex.v1 / gcomplex.v1 --------------------------------------------------------

namespace {

simp::SimplicialComplex complexFields(const json& j, const std::string& ptr) {
    std::vector<std::string> verts;
    const auto vindex = names(field(j, ptr, "vertices"), pointer(ptr, "vertices"), verts);
    if (verts.empty()) fail(pointer(ptr, "vertices"), "a complex needs at least one vertex");
    const auto sp = pointer(ptr, "simplices");
    const auto& ss = array(field(j, ptr, "simplices"), sp);
    std::vector<std::vector<int>> simplices;
    for (int v = 0; v < static_cast<int>(verts.size()); ++v) simplices.push_back({v});
    for (std::size_t i = 0; i < ss.size(); ++i) {
        auto [s, sign] = orientedSimplex(ss[i], pointer(sp, i), vindex);
        if (s.size() > 12) fail(pointer(sp, i), "simplex dimension above 11 is not supported");
        simplices.push_back(std::move(s));
    }
    return simp::SimplicialComplex::fromSimplices(verts, simplices);
}

json facets(const simp::SimplicialComplex& k) {
    json out = json::array();
    for (int d = 0; d <= k.dimension(); ++d) {
        std::vector<bool> isFace(static_cast<std::size_t>(k.count(d)));
        if (d < k.dimension())
            for (int s = 0; s < k.count(d + 1); ++s)
                for (int i = 0; i <= d + 1; ++i) isFace[static_cast<std::size_t>(k.face(d + 1, s, i))] = true;
        for (int s = 0; s < k.count(d); ++s) {
            if (isFace[static_cast<std::size_t>(s)]) continue;
            json names = json::array();
            for (int v : k.simplex(d, s)) names.push_back(k.vertexName(v));
            out.push_back(std::move(names));
        }
    }
    return out;
}

}  // namespace

simp::SimplicialComplex readComplex(const json& j, const std::string& ptr) {
    expectObject(j, ptr, {"schema", "vertices", "simplices"});
    expectSchema(j, ptr, "scomplex.v1");
    return complexFields(j, ptr);
}

json writeComplex(const simp::SimplicialComplex& k) {
    return {{"schema", "scomplex.v1"}, {"vertices", k.vertexNames()}, {"simplices", facets(k)}};
}

deloc::GammaComplex readGammaComplex(const json& j, const std::string& ptr) {
    expectObject(j, ptr, {"schema", "vertices", "simplices", "group", "action"});
    expectSchema(j, ptr, "gcomplex.v1");
    auto k = complexFields(j, ptr);
    const auto g = readGroupRef(field(j, ptr, "group"), pointer(ptr, "group"));
    const auto ap = pointer(ptr, "action");
    const auto& act = field(j, ptr, "action");
    if (!act.is_object()) fail(ap, "expected an object");
    const auto vindex = indexOf(k.vertexNames());
    const auto gindex = indexOf(g->names());
    std::vector<std::vector<int>> action(static_cast<std::size_t>(g->order()));
    for (auto it = act.begin(); it != act.end(); ++it) {
        const auto kp = pointer(ap, it.key());
        const auto e = gindex.find(it.key());
        if (e == gindex.end()) fail(kp, "unknown group element '" + it.key() + "'");
        if (!it.value().is_array() || static_cast<int>(it.value().size()) != k.vertexCount())
            fail(kp, "expected the images of all " + std::to_string(k.vertexCount()) + " vertices");
        std::vector<int> perm;
        std::vector<bool> hit(static_cast<std::size_t>(k.vertexCount()));
        for (std::size_t v = 0; v < it.value().size(); ++v) {
            const int w = lookup(vindex, it.value()[v], pointer(kp, v), "vertex");
            if (hit[static_cast<std::size_t>(w)]) fail(pointer(kp, v), "images do not form a permutation");
            hit[static_cast<std::size_t>(w)] = true;
            perm.push_back(w);
        }
        action[static_cast<std::size_t>(e->second)] = std::move(perm);
    }
    for (int e = 0; e < g->order(); ++e)
        if (action[static_cast<std::size_t>(e)].empty()) fail(pointer(ap, g->name(e)), "missing action of this element");
    return deloc::makeGammaComplex(std::move(k), g, std::move(action));
}

json writeGammaComplex(const deloc::GammaComplex& k) {
    json action = json::object();
    for (int e = 0; e < k.group->order(); ++e) {
        json images = json::array();
        for (int v : k.action[static_cast<std::size_t>(e)]) images.push_back(k.complex.vertexName(v));
        action[k.group->name(e)] = std::move(images);
    }
    return {{"schema", "gcomplex.v1"}, {"vertices", k.complex.vertexNames()}, {"simplices", facets(k.complex)},
            {"group", writeGroup(*k.group)}, {"action", std::move(action)}};
}

// --- cochain3.v1 ----------------------------------------------------------------------

Cochain3Doc readCochain3(const json& j, const simp::SimplicialComplex& k, const std::string& ptr) {
    expectObject(j, ptr, {"schema", "degree", "entries", "localSystem"});
    expectSchema(j, ptr, "cochain3.v1");
    if (j.contains("degree")) integer(j.at("degree"), pointer(ptr, "degree"), 3, 3);
    const auto vindex = indexOf(k.vertexNames());
    Cochain3Doc out;
    out.lambda.assign(static_cast<std::size_t>(k.count(3)), Rational(0));
    auto readEntries = [&](const json& arr, const std::string& ap, int dim, auto&& store) {
        std::set<int> seen;
        for (std::size_t i = 0; i < array(arr, ap).size(); ++i) {
            const auto ip = pointer(ap, i);
            expectObject(arr[i], ip, {"simplex", "value"});
            const auto sp = pointer(ip, "simplex");
            const auto [s, sign] = orientedSimplex(field(arr[i], ip, "simplex"), sp, vindex);
            if (static_cast<int>(s.size()) != dim + 1) fail(sp, "expected a " + std::to_string(dim) + "-simplex");
            const auto idx = k.find(s);
            if (!idx) fail(sp, "not a simplex of the complex");
            if (!seen.insert(*idx).second) fail(sp, "duplicate entry");
            store(*idx, parseRational(field(arr[i], ip, "value"), pointer(ip, "value")) * sign, pointer(ip, "value"));
        }
    };
    readEntries(field(j, ptr, "entries"), pointer(ptr, "entries"), 3,
                [&](int idx, const Rational& v, const std::string&) { out.lambda[static_cast<std::size_t>(idx)] = v; });
    if (j.contains("localSystem")) {
        simp::LocalSystem l{std::vector<Rational>(static_cast<std::size_t>(k.count(1)), Rational(0))};
        readEntries(j.at("localSystem"), pointer(ptr, "localSystem"), 1, [&](int idx, const Rational& v, const std::string& vp) {
            const auto q = QmodZ::fromRational(v);
            if (q.den() > 10000) fail(vp, "local system values need denominators at most 10000");
            l.edge[static_cast<std::size_t>(idx)] = q.lift();
        });
        out.localSystem = std::move(l);
    }
    return out;
}

json writeCochain3(const simp::SimplicialComplex& k, const std::vector<Rational>& lambda,
                   const std::optional<simp::LocalSystem>& localSystem) {
    auto entries = [&](int dim, const std::vector<Rational>& values) {
        json out = json::array();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (sgn(values[i]) == 0) continue;
            json names = json::array();
            for (int v : k.simplex(dim, static_cast<int>(i))) names.push_back(k.vertexName(v));
            out.push_back({{"simplex", std::move(names)}, {"value", formatRational(values[i])}});
        }
        return out;
    };
    json doc = {{"schema", "cochain3.v1"}, {"degree", 3}, {"entries", entries(3, lambda)}};
    if (localSystem) doc["localSystem"] = entries(1, localSystem->edge);
    return doc;
}

// --- loop-meta.v1 ---------------------------------------------------------------------

json writeLoopMeta(const loop::LoopGroupoid& lx) {
    json sectors = json::array();
    for (const auto& s : loop::sectors(lx))
        sectors.push_back({{"representative", lx.carrier->objectName(s.representative)},
                           {"baseObject", lx.base->objectName(s.baseObject)},
                           {"gamma", lx.base->morphism(s.gamma).id},
                           {"centralizerOrder", s.centralizerOrder},
                           {"componentSize", s.componentSize}});
    return {{"schema", "loop-meta.v1"}, {"sectors", std::move(sectors)}};
}

}  // namespace orbiloop::io
