#include "orbiloop/loop.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "orbiloop/error.hpp"

namespace orbiloop::loop {

using gpd::FiniteGroupoid;

LoopGroupoid loopGroupoid(const GroupoidPtr& xp) {
    const auto& X = *xp;
    LoopGroupoid L;
    L.base = xp;
    L.objectOf.assign(X.morphismCount(), -1);
    FiniteGroupoid::Builder b;
    for (int x = 0; x < X.objectCount(); ++x)
        for (int gamma : X.automorphisms(x)) {
            const int o = b.addObject("(" + X.objectName(x) + "," + X.morphism(gamma).id + ")");
            L.objectOf[gamma] = o;
            L.loopOf.push_back(gamma);
        }
    const int nObj = static_cast<int>(L.loopOf.size());
    std::vector<int> morSrc;
    for (int o = 0; o < nObj; ++o) {
        const int gamma = L.loopOf[o];
        const int x = X.src(gamma);
        L.firstMorphism_.push_back(static_cast<int>(L.muOf.size()));
        for (int mu : X.outgoing(x)) {
            const int conj = X.compose(X.compose(mu, gamma), X.inv(mu));
            b.addMorphism("(" + X.objectName(x) + "," + X.morphism(gamma).id + ";" + X.morphism(mu).id + ")", o,
                          L.objectOf[conj]);
            L.muOf.push_back(mu);
            morSrc.push_back(o);
        }
    }
    for (int o = 0; o < nObj; ++o) b.setIdentity(o, L.morphismAt(o, X.ident(X.src(L.loopOf[o]))));
    const int nMor = static_cast<int>(L.muOf.size());
    std::vector<int> morDst(nMor);
    for (int m = 0; m < nMor; ++m) {
        const int mu = L.muOf[m];
        const int gamma = L.loopOf[morSrc[m]];
        morDst[m] = L.objectOf[X.compose(X.compose(mu, gamma), X.inv(mu))];
        b.setInverse(m, L.morphismAt(morDst[m], X.inv(mu)));
    }
    b.composeWith([&](int second, int first) {
        return L.morphismAt(morSrc[first], X.compose(L.muOf[second], L.muOf[first]));
    });
    L.carrier = share(std::move(b).build());
    L.proj = {L.carrier, xp, std::vector<int>(nObj), L.muOf};
    for (int o = 0; o < nObj; ++o) L.proj.obj[o] = X.src(L.loopOf[o]);
    return L;
}

std::vector<Sector> sectors(const LoopGroupoid& lx) {
    const auto& C = *lx.carrier;
    const auto comp = C.components();
    std::map<int, Sector> bySector;
    for (int o = 0; o < C.objectCount(); ++o) {
        auto [it, fresh] = bySector.try_emplace(comp[o]);
        if (fresh) {
            it->second.representative = o;
            it->second.baseObject = lx.baseObject(o);
            it->second.gamma = lx.loopOf[o];
            it->second.centralizerOrder = static_cast<int>(C.automorphisms(o).size());
            it->second.componentSize = 0;
        }
        ++it->second.componentSize;
    }
    std::vector<Sector> out;
    for (auto& [_, s] : bySector) out.push_back(s);
    return out;
}

Inertia inertiaViaEqualizer(const GroupoidPtr& x, const LoopGroupoid& lx) {
    if (lx.base != x) throw PreconditionError("same-base", "loop groupoid built over a different groupoid");
    Inertia in{gpd::equalizer(gpd::identityMap(x), gpd::identityMap(x)), {}};
    const auto& E = *in.equalizer.groupoid;
    const auto& X = *x;
    in.toLoop = {in.equalizer.groupoid, lx.carrier, std::vector<int>(E.objectCount()),
                 std::vector<int>(E.morphismCount())};
    for (int o = 0; o < E.objectCount(); ++o) {
        const auto& d = in.equalizer.objects[o];
        in.toLoop.obj[o] = lx.objectOf[X.compose(X.inv(d.beta), d.alpha)];
    }
    for (int m = 0; m < E.morphismCount(); ++m)
        in.toLoop.mor[m] = lx.morphismAt(in.toLoop.obj[E.src(m)], in.equalizer.morphisms[m].first);
    return in;
}

GroupoidMap loopOfMap(const GroupoidMap& f, const LoopGroupoid& lx, const LoopGroupoid& ly) {
    if (lx.base != f.dom || ly.base != f.cod)
        throw PreconditionError("same-base", "loop groupoids do not match the map");
    const auto& LX = *lx.carrier;
    GroupoidMap out{lx.carrier, ly.carrier, std::vector<int>(LX.objectCount()), std::vector<int>(LX.morphismCount())};
    for (int o = 0; o < LX.objectCount(); ++o) out.obj[o] = ly.objectOf[f.mor[lx.loopOf[o]]];
    for (int m = 0; m < LX.morphismCount(); ++m) out.mor[m] = ly.morphismAt(out.obj[LX.src(m)], f.mor[lx.muOf[m]]);
    return out;
}

LoopMultiplication loopMultiply(const LoopGroupoid& lx) {
    const auto& X = *lx.base;
    LoopMultiplication m{gpd::fiberProduct(lx.proj, lx.proj), {}, {}, {}};
    const auto& P = *m.pairs.groupoid;
    m.multiply = {m.pairs.groupoid, lx.carrier, std::vector<int>(P.objectCount()), std::vector<int>(P.morphismCount())};
    for (int o = 0; o < P.objectCount(); ++o) {
        const auto& d = m.pairs.objects[o];
        const int theta = d.gamma;
        const int moved = X.compose(X.inv(theta), X.compose(lx.loopOf[d.b], theta));
        m.multiply.obj[o] = lx.objectOf[X.compose(lx.loopOf[d.a], moved)];
    }
    for (int f = 0; f < P.morphismCount(); ++f)
        m.multiply.mor[f] = lx.morphismAt(m.multiply.obj[P.src(f)], lx.muOf[m.pairs.projA.mor[f]]);
    for (int x = 0; x < X.objectCount(); ++x) m.unit.push_back(lx.objectOf[X.ident(x)]);
    for (int o = 0; o < lx.carrier->objectCount(); ++o) m.inverse.push_back(lx.objectOf[X.inv(lx.loopOf[o])]);
    return m;
}

bool checkGroupAxioms(const LoopMultiplication& m, const LoopGroupoid& lx) {
    const auto& X = *lx.base;
    if (m.multiply.checkFunctor()) return false;
    // Over X: proj o multiply == proj o projA.
    if (gpd::composeMaps(lx.proj, m.multiply) != gpd::composeMaps(lx.proj, m.pairs.projA)) return false;
    // Strictly-over-x pairs (theta = id) indexed by (a, b).
    std::map<std::pair<int, int>, int> strict;
    for (int o = 0; o < m.pairs.groupoid->objectCount(); ++o) {
        const auto& d = m.pairs.objects[o];
        if (X.isIdentity(d.gamma)) strict[{d.a, d.b}] = o;
    }
    auto mul = [&](int a, int b) { return m.multiply.obj[strict.at({a, b})]; };
    for (int x = 0; x < X.objectCount(); ++x) {
        std::vector<int> fiber;
        for (int gamma : X.automorphisms(x)) fiber.push_back(lx.objectOf[gamma]);
        const int e = m.unit[x];
        for (int a : fiber) {
            if (mul(a, e) != a || mul(e, a) != a) return false;
            if (mul(a, m.inverse[a]) != e || mul(m.inverse[a], a) != e) return false;
            for (int b : fiber)
                for (int c : fiber)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        }
    }
    return true;
}

bool checkCartesianDescription(const LoopGroupoid& lx) {
    const auto& X = *lx.base;
    const auto& L = *lx.carrier;
    std::set<std::tuple<int, int, int>> viaPullback;
    for (int o0 = 0; o0 < L.objectCount(); ++o0)
        for (int mu : X.outgoing(lx.baseObject(o0)))
            for (int g1 : X.automorphisms(X.dst(mu))) {
                const int g0 = lx.loopOf[o0];
                const int mval = X.compose(X.inv(g1), X.compose(mu, X.compose(g0, X.inv(mu))));
                if (X.isIdentity(mval)) viaPullback.emplace(o0, lx.objectOf[g1], mu);
            }
    std::set<std::tuple<int, int, int>> direct;
    for (int f = 0; f < L.morphismCount(); ++f) direct.emplace(L.src(f), L.dst(f), lx.muOf[f]);
    return direct.size() == static_cast<std::size_t>(L.morphismCount()) && direct == viaPullback;
}

bool checkLoopPreservesPullback(const GroupoidMap& f, const GroupoidMap& g) {
    const auto fp = gpd::fiberProduct(f, g);
    const auto lp = loopGroupoid(fp.groupoid);
    const auto la = loopGroupoid(f.dom);
    const auto lb = loopGroupoid(g.dom);
    const auto lc = loopGroupoid(f.cod);
    const auto rhs = gpd::fiberProduct(loopOfMap(f, la, lc), loopOfMap(g, lb, lc));
    const auto& P = *fp.groupoid;
    const auto& R = *rhs.groupoid;

    std::map<std::tuple<int, int, int>, int> rhsObject;
    for (int o = 0; o < R.objectCount(); ++o) {
        const auto& d = rhs.objects[o];
        rhsObject[{d.a, d.b, d.gamma}] = o;
    }
    const auto& LP = *lp.carrier;
    GroupoidMap cmp{lp.carrier, rhs.groupoid, std::vector<int>(LP.objectCount()), std::vector<int>(LP.morphismCount())};
    for (int o = 0; o < LP.objectCount(); ++o) {
        // A loop (phi, psi) at (a, b, gamma) goes to ((a, phi), (b, psi), ((f a, f phi); gamma)).
        const int loopMor = lp.loopOf[o];
        const int pObj = P.src(loopMor);
        const int phi = fp.projA.mor[loopMor];
        const int psi = fp.projB.mor[loopMor];
        const int la0 = la.objectOf[phi];
        const int lb0 = lb.objectOf[psi];
        const int theta = lc.morphismAt(lc.objectOf[f.mor[phi]], fp.objects[pObj].gamma);
        auto it = rhsObject.find({la0, lb0, theta});
        if (it == rhsObject.end()) return false;
        cmp.obj[o] = it->second;
    }
    for (int m = 0; m < LP.morphismCount(); ++m) {
        const int o = LP.src(m);
        const int pm = lp.muOf[m];
        const int ma = la.morphismAt(rhs.objects[cmp.obj[o]].a, fp.projA.mor[pm]);
        const int mb = lb.morphismAt(rhs.objects[cmp.obj[o]].b, fp.projB.mor[pm]);
        // Locate (ma, mb) among the morphisms leaving cmp.obj[o].
        int found = -1;
        for (int r : R.outgoing(cmp.obj[o]))
            if (rhs.projA.mor[r] == ma && rhs.projB.mor[r] == mb) {
                found = r;
                break;
            }
        if (found < 0) return false;
        cmp.mor[m] = found;
    }
    return !cmp.checkFunctor() && gpd::isIsomorphism(cmp);
}

}  // namespace orbiloop::loop
