#include "orbiloop/groupoid.hpp"

#include <algorithm>
#include <numeric>

#include "orbiloop/error.hpp"

namespace orbiloop::gpd {

// --- FiniteGroupoid ------------------------------------------------------------------

std::vector<int> FiniteGroupoid::hom(int x, int y) const {
    std::vector<int> r;
    for (int f : out_[x])
        if (dst(f) == y) r.push_back(f);
    return r;
}

std::optional<int> FiniteGroupoid::findObject(const std::string& name) const {
    auto it = objectIndex_.find(name);
    if (it == objectIndex_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> FiniteGroupoid::findMorphism(const std::string& name) const {
    auto it = morphismIndex_.find(name);
    if (it == morphismIndex_.end()) return std::nullopt;
    return it->second;
}

std::vector<int> FiniteGroupoid::components() const {
    const int n = objectCount();
    std::vector<int> label(n, -1);
    for (int x = 0; x < n; ++x) {
        if (label[x] >= 0) continue;
        std::vector<int> stack{x};
        label[x] = x;
        while (!stack.empty()) {
            const int y = stack.back();
            stack.pop_back();
            for (int f : out_[y])
                if (label[dst(f)] < 0) {
                    label[dst(f)] = x;
                    stack.push_back(dst(f));
                }
            for (int f : in_[y])
                if (label[src(f)] < 0) {
                    label[src(f)] = x;
                    stack.push_back(src(f));
                }
        }
    }
    return label;
}

int FiniteGroupoid::componentCount() const {
    const auto label = components();
    int c = 0;
    for (int x = 0; x < objectCount(); ++x)
        if (label[x] == x) ++c;
    return c;
}

std::size_t FiniteGroupoid::composablePairCount() const {
    std::size_t n = 0;
    for (int x = 0; x < objectCount(); ++x) n += out_[x].size() * in_[x].size();
    return n;
}

// --- Builder -------------------------------------------------------------------------

int FiniteGroupoid::Builder::addObject(std::string name) {
    const int idx = objectCount();
    if (!g_.objectIndex_.emplace(name, idx).second)
        throw SchemaError("/objects", "duplicate object id '" + name + "'");
    g_.objects_.push_back(std::move(name));
    indexed_ = false;
    return idx;
}

int FiniteGroupoid::Builder::addMorphism(std::string name, int src, int dst) {
    if (src < 0 || src >= objectCount() || dst < 0 || dst >= objectCount())
        throw SchemaError("/morphisms", "morphism '" + name + "' has an unknown endpoint");
    const int idx = morphismCount();
    if (!g_.morphismIndex_.emplace(name, idx).second)
        throw SchemaError("/morphisms", "duplicate morphism id '" + name + "'");
    g_.morphisms_.push_back({std::move(name), src, dst});
    indexed_ = false;
    return idx;
}

void FiniteGroupoid::Builder::index() {
    if (indexed_) return;
    const int n = objectCount(), m = morphismCount();
    g_.out_.assign(n, {});
    g_.in_.assign(n, {});
    g_.outPos_.assign(m, 0);
    g_.inPos_.assign(m, 0);
    for (int f = 0; f < m; ++f) {
        auto& o = g_.out_[g_.morphisms_[f].src];
        g_.outPos_[f] = static_cast<int>(o.size());
        o.push_back(f);
        auto& i = g_.in_[g_.morphisms_[f].dst];
        g_.inPos_[f] = static_cast<int>(i.size());
        i.push_back(f);
    }
    g_.comp_.assign(n, {});
    for (int x = 0; x < n; ++x) g_.comp_[x].assign(g_.out_[x].size() * g_.in_[x].size(), -1);
    g_.ident_.resize(n, -1);
    g_.inv_.resize(m, -1);
    indexed_ = true;
}

void FiniteGroupoid::Builder::setIdentity(int object, int morphism) {
    index();
    g_.ident_[object] = morphism;
}

void FiniteGroupoid::Builder::setInverse(int morphism, int inverse) {
    index();
    g_.inv_[morphism] = inverse;
}

void FiniteGroupoid::Builder::setCompose(int g, int f, int gf) {
    index();
    if (g_.morphisms_[f].dst != g_.morphisms_[g].src)
        throw SchemaError("/compose", "composition entry for non-composable pair (" + g_.morphisms_[g].id + ", " +
                                          g_.morphisms_[f].id + ")");
    const int x = g_.morphisms_[g].src;
    g_.comp_[x][static_cast<std::size_t>(g_.outPos_[g]) * g_.in_[x].size() + g_.inPos_[f]] = gf;
}

void FiniteGroupoid::Builder::composeWith(const std::function<int(int, int)>& compose) {
    index();
    for (int x = 0; x < objectCount(); ++x)
        for (int g : g_.out_[x])
            for (int f : g_.in_[x]) setCompose(g, f, compose(g, f));
}

FiniteGroupoid FiniteGroupoid::Builder::build() && {
    index();
    for (int x = 0; x < objectCount(); ++x) {
        const int e = g_.ident_[x];
        if (e < 0) throw SchemaError("/ident", "object '" + g_.objects_[x] + "' has no identity");
        if (g_.morphisms_[e].src != x || g_.morphisms_[e].dst != x)
            throw SchemaError("/ident", "identity of '" + g_.objects_[x] + "' is not an endomorphism of it");
        for (int v : g_.comp_[x])
            if (v < 0) throw SchemaError("/compose", "composition table is not total at object '" + g_.objects_[x] + "'");
    }
    for (int f = 0; f < morphismCount(); ++f)
        if (g_.inv_[f] < 0) throw SchemaError("/inv", "morphism '" + g_.morphisms_[f].id + "' has no inverse");
    return std::move(g_);
}

// --- validate ------------------------------------------------------------------------

ValidationReport validate(const FiniteGroupoid& g) {
    auto fail = [](std::string axiom, std::vector<std::string> w) {
        return ValidationReport{false, std::move(axiom), std::move(w)};
    };
    auto id = [&](int f) { return g.morphism(f).id; };
    const int m = g.morphismCount();
    for (int x = 0; x < g.objectCount(); ++x)
        for (int gm : g.outgoing(x))
            for (int f : g.incoming(x)) {
                const int gf = g.compose(gm, f);
                if (g.src(gf) != g.src(f) || g.dst(gf) != g.dst(gm))
                    return fail("composition-endpoints", {id(gm), id(f), id(gf)});
            }
    for (int f = 0; f < m; ++f) {
        if (g.compose(f, g.ident(g.src(f))) != f) return fail("right-unit", {id(f), id(g.ident(g.src(f)))});
        if (g.compose(g.ident(g.dst(f)), f) != f) return fail("left-unit", {id(g.ident(g.dst(f))), id(f)});
    }
    for (int f = 0; f < m; ++f) {
        const int fi = g.inv(f);
        if (g.src(fi) != g.dst(f) || g.dst(fi) != g.src(f)) return fail("inverse-endpoints", {id(f), id(fi)});
        if (g.compose(fi, f) != g.ident(g.src(f))) return fail("left-inverse", {id(fi), id(f)});
        if (g.compose(f, fi) != g.ident(g.dst(f))) return fail("right-inverse", {id(f), id(fi)});
    }
    for (int x = 0; x < g.objectCount(); ++x)
        for (int gm : g.outgoing(x))
            for (int f : g.incoming(x))
                for (int h : g.outgoing(g.dst(gm)))
                    if (g.compose(h, g.compose(gm, f)) != g.compose(g.compose(h, gm), f))
                        return fail("associativity", {id(h), id(gm), id(f)});
    return {};
}

// --- maps ----------------------------------------------------------------------------

std::optional<std::string> GroupoidMap::checkFunctor() const {
    const auto& a = *dom;
    const auto& b = *cod;
    if (static_cast<int>(obj.size()) != a.objectCount() || static_cast<int>(mor.size()) != a.morphismCount())
        return "map tables do not cover the domain";
    for (int f = 0; f < a.morphismCount(); ++f) {
        const int y = mor[f];
        if (y < 0 || y >= b.morphismCount()) return "morphism image out of range";
        if (b.src(y) != obj[a.src(f)] || b.dst(y) != obj[a.dst(f)])
            return "endpoints not preserved at " + a.morphism(f).id;
    }
    for (int x = 0; x < a.objectCount(); ++x)
        if (mor[a.ident(x)] != b.ident(obj[x])) return "identity not preserved at " + a.objectName(x);
    for (int x = 0; x < a.objectCount(); ++x)
        for (int g : a.outgoing(x))
            for (int f : a.incoming(x))
                if (mor[a.compose(g, f)] != b.compose(mor[g], mor[f]))
                    return "composition not preserved at (" + a.morphism(g).id + ", " + a.morphism(f).id + ")";
    return std::nullopt;
}

GroupoidMap identityMap(const GroupoidPtr& x) {
    GroupoidMap m{x, x, std::vector<int>(x->objectCount()), std::vector<int>(x->morphismCount())};
    std::iota(m.obj.begin(), m.obj.end(), 0);
    std::iota(m.mor.begin(), m.mor.end(), 0);
    return m;
}

GroupoidMap composeMaps(const GroupoidMap& after, const GroupoidMap& before) {
    if (before.cod != after.dom && before.cod->objectCount() != after.dom->objectCount())
        throw PreconditionError("composable-maps", "maps are not composable");
    GroupoidMap m{before.dom, after.cod, {}, {}};
    m.obj.reserve(before.obj.size());
    for (int x : before.obj) m.obj.push_back(after.obj[x]);
    m.mor.reserve(before.mor.size());
    for (int f : before.mor) m.mor.push_back(after.mor[f]);
    return m;
}

GroupoidMap terminalMap(const GroupoidPtr& x, const GroupoidPtr& point) {
    return {x, point, std::vector<int>(x->objectCount(), 0), std::vector<int>(x->morphismCount(), 0)};
}

std::optional<std::string> NatIso::checkNatural() const {
    const auto& a = *source.dom;
    const auto& b = *source.cod;
    for (int x = 0; x < a.objectCount(); ++x) {
        const int c = component[x];
        if (b.src(c) != source.obj[x] || b.dst(c) != target.obj[x])
            return "component at " + a.objectName(x) + " has wrong endpoints";
    }
    for (int f = 0; f < a.morphismCount(); ++f) {
        const int lhs = b.compose(component[a.dst(f)], source.mor[f]);
        const int rhs = b.compose(target.mor[f], component[a.src(f)]);
        if (lhs != rhs) return "naturality square fails at " + a.morphism(f).id;
    }
    return std::nullopt;
}

// --- constructions -------------------------------------------------------------------

GroupoidPtr pointGroupoid() { return discreteGroupoid({"*"}); }

GroupoidPtr discreteGroupoid(const std::vector<std::string>& objects) {
    FiniteGroupoid::Builder b;
    for (const auto& o : objects) {
        const int x = b.addObject(o);
        const int e = b.addMorphism("1_" + o, x, x);
        b.setIdentity(x, e);
        b.setInverse(e, e);
    }
    b.composeWith([](int g, int) { return g; });
    return share(std::move(b).build());
}

GroupoidPtr oneObjectGroupoid(const FiniteGroup& g) {
    FiniteGroupoid::Builder b;
    b.addObject("*");
    for (int a = 0; a < g.order(); ++a) b.addMorphism(g.name(a), 0, 0);
    b.setIdentity(0, g.identity());
    for (int a = 0; a < g.order(); ++a) b.setInverse(a, g.inv(a));
    b.composeWith([&](int x, int y) { return g.mul(x, y); });
    return share(std::move(b).build());
}

GroupoidPtr actionGroupoid(const GroupAction& action) {
    const auto& G = action.group;
    const int n = static_cast<int>(action.points.size());
    if (static_cast<int>(action.act.size()) != G.order())
        throw PreconditionError("left-action", "action table must have one row per group element");
    for (int g = 0; g < G.order(); ++g) {
        if (static_cast<int>(action.act[g].size()) != n)
            throw PreconditionError("left-action", "action row for " + G.name(g) + " has wrong length");
        for (int x = 0; x < n; ++x)
            if (action.act[g][x] < 0 || action.act[g][x] >= n)
                throw PreconditionError("left-action", "action of " + G.name(g) + " leaves the set");
    }
    for (int x = 0; x < n; ++x)
        if (action.act[G.identity()][x] != x)
            throw PreconditionError("left-action", "identity moves point " + action.points[x]);
    for (int h = 0; h < G.order(); ++h)
        for (int g = 0; g < G.order(); ++g)
            for (int x = 0; x < n; ++x)
                if (action.act[h][action.act[g][x]] != action.act[G.mul(h, g)][x])
                    throw PreconditionError("left-action", "h.(g.x) != (hg).x for (h, g) = (" + G.name(h) + ", " +
                                                               G.name(g) + ") at x = " + action.points[x]);
    FiniteGroupoid::Builder b;
    for (const auto& p : action.points) b.addObject(p);
    const int order = G.order();
    auto morIndex = [order](int x, int g) { return x * order + g; };
    for (int x = 0; x < n; ++x)
        for (int g = 0; g < order; ++g)
            b.addMorphism("(" + action.points[x] + "," + G.name(g) + ")", x, action.act[g][x]);
    for (int x = 0; x < n; ++x) {
        b.setIdentity(x, morIndex(x, G.identity()));
        for (int g = 0; g < order; ++g) b.setInverse(morIndex(x, g), morIndex(action.act[g][x], G.inv(g)));
    }
    b.composeWith([&](int hm, int gm) {
        const int x = gm / order;
        return morIndex(x, G.mul(hm % order, gm % order));
    });
    return share(std::move(b).build());
}

FiberProduct fiberProduct(const GroupoidMap& f, const GroupoidMap& g) {
    if (f.cod != g.cod) throw PreconditionError("common-codomain", "fiber product needs maps with a common codomain");
    const auto& A = *f.dom;
    const auto& B = *g.dom;
    const auto& C = *f.cod;
    FiberProduct out;
    FiniteGroupoid::Builder b;
    std::unordered_map<long long, int> objIndex;
    std::vector<std::string> objNames;
    auto key = [&](int a, int bb, int gamma) {
        return (static_cast<long long>(a) * B.objectCount() + bb) * C.morphismCount() + gamma;
    };
    for (int a = 0; a < A.objectCount(); ++a)
        for (int bb = 0; bb < B.objectCount(); ++bb)
            for (int gamma : C.hom(f.obj[a], g.obj[bb])) {
                objNames.push_back("(" + A.objectName(a) + "," + B.objectName(bb) + "," + C.morphism(gamma).id + ")");
                const int idx = b.addObject(objNames.back());
                objIndex.emplace(key(a, bb, gamma), idx);
                out.objects.push_back({a, bb, gamma});
            }
    // Morphisms out of object o are (phi, psi), phi in out(a), psi in out(b), stored contiguously
    // starting at base[o] in row-major order of (outPosition(phi), outPosition(psi)).
    const int nObj = static_cast<int>(out.objects.size());
    std::vector<int> base(nObj);
    std::vector<std::pair<int, int>> morData;
    std::vector<int> morSrc;
    for (int o = 0; o < nObj; ++o) {
        const auto [a, bb, gamma] = out.objects[o];
        base[o] = static_cast<int>(morData.size());
        for (int phi : A.outgoing(a))
            for (int psi : B.outgoing(bb)) {
                const int gamma2 = C.compose(C.compose(g.mor[psi], gamma), C.inv(f.mor[phi]));
                const int target = objIndex.at(key(A.dst(phi), B.dst(psi), gamma2));
                b.addMorphism("(" + A.morphism(phi).id + "," + B.morphism(psi).id + ")@" + objNames[o], o, target);
                morData.emplace_back(phi, psi);
                morSrc.push_back(o);
            }
    }
    auto morAt = [&](int o, int phi, int psi) {
        const int bb = out.objects[o].b;
        return base[o] + A.outPosition(phi) * static_cast<int>(B.outgoing(bb).size()) + B.outPosition(psi);
    };
    auto targetOf = [&](int m) {
        const auto [phi, psi] = morData[m];
        const auto& od = out.objects[morSrc[m]];
        const int gamma2 = C.compose(C.compose(g.mor[psi], od.gamma), C.inv(f.mor[phi]));
        return objIndex.at(key(A.dst(phi), B.dst(psi), gamma2));
    };
    for (int o = 0; o < nObj; ++o) {
        const auto& od = out.objects[o];
        b.setIdentity(o, morAt(o, A.ident(od.a), B.ident(od.b)));
    }
    for (int m = 0; m < static_cast<int>(morData.size()); ++m) {
        const auto [phi, psi] = morData[m];
        b.setInverse(m, morAt(targetOf(m), A.inv(phi), B.inv(psi)));
    }
    b.composeWith([&](int second, int first) {
        const auto [phi2, psi2] = morData[second];
        const auto [phi1, psi1] = morData[first];
        return morAt(morSrc[first], A.compose(phi2, phi1), B.compose(psi2, psi1));
    });
    out.groupoid = share(std::move(b).build());
    const int nMor = static_cast<int>(morData.size());
    out.projA = {out.groupoid, f.dom, std::vector<int>(nObj), std::vector<int>(nMor)};
    out.projB = {out.groupoid, g.dom, std::vector<int>(nObj), std::vector<int>(nMor)};
    for (int o = 0; o < nObj; ++o) {
        out.projA.obj[o] = out.objects[o].a;
        out.projB.obj[o] = out.objects[o].b;
    }
    for (int m = 0; m < nMor; ++m) {
        out.projA.mor[m] = morData[m].first;
        out.projB.mor[m] = morData[m].second;
    }
    out.filler.source = composeMaps(f, out.projA);
    out.filler.target = composeMaps(g, out.projB);
    out.filler.component.resize(nObj);
    for (int o = 0; o < nObj; ++o) out.filler.component[o] = out.objects[o].gamma;
    return out;
}

FiberProduct product(const GroupoidPtr& a, const GroupoidPtr& b) {
    const auto pt = pointGroupoid();
    return fiberProduct(terminalMap(a, pt), terminalMap(b, pt));
}

namespace {

// Map X -> Y x Y into the standard product model given by `prod`.
GroupoidMap pairMap(const GroupoidMap& f, const GroupoidMap& g, const FiberProduct& prod) {
    const auto& X = *f.dom;
    const auto& P = *prod.groupoid;
    std::unordered_map<long long, int> objIndex;
    const long long ny = f.cod->objectCount();
    for (int o = 0; o < P.objectCount(); ++o)
        objIndex.emplace(prod.objects[o].a * ny + prod.objects[o].b, o);
    GroupoidMap m{f.dom, prod.groupoid, std::vector<int>(X.objectCount()), std::vector<int>(X.morphismCount())};
    for (int x = 0; x < X.objectCount(); ++x) m.obj[x] = objIndex.at(f.obj[x] * ny + g.obj[x]);
    for (int phi = 0; phi < X.morphismCount(); ++phi) {
        const int o = m.obj[X.src(phi)];
        int found = -1;
        for (int mm : P.outgoing(o))
            if (prod.projA.mor[mm] == f.mor[phi] && prod.projB.mor[mm] == g.mor[phi]) {
                found = mm;
                break;
            }
        if (found < 0) throw InternalError("pair map: morphism not found in product model");
        m.mor[phi] = found;
    }
    return m;
}

}  // namespace

Equalizer equalizer(const GroupoidMap& f, const GroupoidMap& g) {
    if (f.dom != g.dom || f.cod != g.cod)
        throw PreconditionError("common-endpoints", "equalizer needs maps with common domain and codomain");
    const GroupoidPtr Y = f.cod;
    const FiberProduct yy = product(Y, Y);
    const GroupoidMap fg = pairMap(f, g, yy);
    const GroupoidMap diag = pairMap(identityMap(Y), identityMap(Y), yy);
    const FiberProduct fp = fiberProduct(fg, diag);
    Equalizer e;
    e.groupoid = fp.groupoid;
    e.toX = fp.projA;
    e.toY = fp.projB;
    for (const auto& od : fp.objects)
        e.objects.push_back({od.a, od.b, yy.projA.mor[od.gamma], yy.projB.mor[od.gamma]});
    for (int m = 0; m < fp.groupoid->morphismCount(); ++m) e.morphisms.emplace_back(fp.projA.mor[m], fp.projB.mor[m]);
    e.filler.source = composeMaps(f, e.toX);
    e.filler.target = composeMaps(g, e.toX);
    for (const auto& od : e.objects) e.filler.component.push_back(Y->compose(Y->inv(od.beta), od.alpha));
    return e;
}

EquivalenceReport isEquivalence(const GroupoidMap& F) {
    const auto& A = *F.dom;
    const auto& B = *F.cod;
    const auto compB = B.components();
    std::vector<char> hit(B.objectCount(), 0);
    for (int a = 0; a < A.objectCount(); ++a) hit[compB[F.obj[a]]] = 1;
    for (int y = 0; y < B.objectCount(); ++y)
        if (!hit[compB[y]]) return {false, "object " + B.objectName(y) + " is not in the essential image"};
    // Fully faithful: Hom(a, a') -> Hom(Fa, Fa') bijective for every pair.
    for (int a = 0; a < A.objectCount(); ++a) {
        std::vector<std::vector<int>> homA(A.objectCount());
        for (int f : A.outgoing(a)) homA[A.dst(f)].push_back(f);
        std::vector<int> homBcount(B.objectCount(), 0);
        for (int h : B.outgoing(F.obj[a])) ++homBcount[B.dst(h)];
        for (int a2 = 0; a2 < A.objectCount(); ++a2) {
            const int expected = homBcount[F.obj[a2]];
            if (static_cast<int>(homA[a2].size()) != expected)
                return {false, "Hom(" + A.objectName(a) + ", " + A.objectName(a2) + ") has " +
                                   std::to_string(homA[a2].size()) + " elements but its image hom-set has " +
                                   std::to_string(expected)};
            std::vector<int> images;
            for (int f : homA[a2]) images.push_back(F.mor[f]);
            std::sort(images.begin(), images.end());
            if (std::adjacent_find(images.begin(), images.end()) != images.end())
                return {false, "F is not faithful on Hom(" + A.objectName(a) + ", " + A.objectName(a2) + ")"};
        }
    }
    return {true, ""};
}

bool isIsomorphism(const GroupoidMap& F) {
    auto bijective = [](const std::vector<int>& v, int n) {
        if (static_cast<int>(v.size()) != n) return false;
        std::vector<char> seen(n, 0);
        for (int x : v) {
            if (x < 0 || x >= n || seen[x]) return false;
            seen[x] = 1;
        }
        return true;
    };
    return bijective(F.obj, F.cod->objectCount()) && bijective(F.mor, F.cod->morphismCount()) && !F.checkFunctor();
}

}  // namespace orbiloop::gpd
