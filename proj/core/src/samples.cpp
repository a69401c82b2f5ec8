#include "orbiloop/samples.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace orbiloop::samples {

using gpd::FiniteGroupoid;

std::vector<GroupoidMap> allFunctors(const GroupoidPtr& t, const GroupoidPtr& a) {
    const auto& T = *t;
    const auto& A = *a;
    std::vector<GroupoidMap> out;
    std::vector<int> obj(static_cast<std::size_t>(T.objectCount()));
    std::vector<int> mor(static_cast<std::size_t>(T.morphismCount()));
    auto assignMor = [&](auto&& self, int f) -> void {
        if (f == T.morphismCount()) {
            GroupoidMap m{t, a, obj, mor};
            if (!m.checkFunctor()) out.push_back(std::move(m));
            return;
        }
        const int x = obj[T.src(f)], y = obj[T.dst(f)];
        if (T.isIdentity(f)) {
            mor[f] = A.ident(x);
            self(self, f + 1);
            return;
        }
        for (int g : A.hom(x, y)) {
            mor[f] = g;
            self(self, f + 1);
        }
    };
    auto assignObj = [&](auto&& self, int x) -> void {
        if (x == T.objectCount()) {
            assignMor(assignMor, 0);
            return;
        }
        for (int y = 0; y < A.objectCount(); ++y) {
            obj[x] = y;
            self(self, x + 1);
        }
    };
    assignObj(assignObj, 0);
    return out;
}

std::vector<NatIso> allNatIsos(const GroupoidMap& s, const GroupoidMap& t) {
    const auto& T = *s.dom;
    const auto& C = *s.cod;
    std::vector<NatIso> out;
    std::vector<int> comp(static_cast<std::size_t>(T.objectCount()));
    auto rec = [&](auto&& self, int x) -> void {
        if (x == T.objectCount()) {
            NatIso n{s, t, comp};
            if (!n.checkNatural()) out.push_back(std::move(n));
            return;
        }
        for (int g : C.hom(s.obj[x], t.obj[x])) {
            comp[x] = g;
            self(self, x + 1);
        }
    };
    rec(rec, 0);
    return out;
}

GroupoidMap relabel(const GroupoidPtr& g, std::mt19937& rng) {
    const auto& G = *g;
    std::vector<int> po(static_cast<std::size_t>(G.objectCount())), pm(static_cast<std::size_t>(G.morphismCount()));
    std::iota(po.begin(), po.end(), 0);
    std::iota(pm.begin(), pm.end(), 0);
    std::shuffle(po.begin(), po.end(), rng);
    std::shuffle(pm.begin(), pm.end(), rng);
    std::vector<int> invO(po.size()), invM(pm.size());
    for (std::size_t i = 0; i < po.size(); ++i) invO[po[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < pm.size(); ++i) invM[pm[i]] = static_cast<int>(i);
    FiniteGroupoid::Builder b;
    for (int k = 0; k < G.objectCount(); ++k) b.addObject("o" + G.objectName(invO[k]));
    for (int k = 0; k < G.morphismCount(); ++k) {
        const int f = invM[k];
        b.addMorphism("m" + G.morphism(f).id, po[G.src(f)], po[G.dst(f)]);
    }
    for (int x = 0; x < G.objectCount(); ++x) b.setIdentity(po[x], pm[G.ident(x)]);
    for (int f = 0; f < G.morphismCount(); ++f) b.setInverse(pm[f], pm[G.inv(f)]);
    b.composeWith([&](int gg, int ff) { return pm[G.compose(invM[gg], invM[ff])]; });
    return {g, gpd::share(std::move(b).build()), po, pm};
}

GroupAction pulledBack(const FiniteGroup& g, const std::vector<int>& hom, const GroupAction& y) {
    GroupAction out{g, y.points, {}};
    for (int a = 0; a < g.order(); ++a) out.act.push_back(y.act[hom[a]]);
    return out;
}

GroupAction leftRegular(const FiniteGroup& g) {
    GroupAction a{g, g.names(), {}};
    for (int x = 0; x < g.order(); ++x) {
        a.act.emplace_back();
        for (int y = 0; y < g.order(); ++y) a.act.back().push_back(g.mul(x, y));
    }
    return a;
}

GroupAction conjugation(const FiniteGroup& g) {
    GroupAction a{g, g.names(), {}};
    for (int x = 0; x < g.order(); ++x) {
        a.act.emplace_back();
        for (int y = 0; y < g.order(); ++y) a.act.back().push_back(g.conj(x, y));
    }
    return a;
}

GroupAction trivialAction(const FiniteGroup& g, int points) {
    GroupAction a{g, {}, {}};
    for (int p = 0; p < points; ++p) a.points.push_back("p" + std::to_string(p));
    for (int x = 0; x < g.order(); ++x) {
        a.act.emplace_back(points);
        std::iota(a.act.back().begin(), a.act.back().end(), 0);
    }
    return a;
}

GroupoidMap pulledBackMap(const GroupoidPtr& x, const GroupoidPtr& y, const std::vector<int>& hom) {
    const int n = static_cast<int>(hom.size());
    const int ny = y->morphismCount() / y->objectCount();
    GroupoidMap m{x, y, std::vector<int>(static_cast<std::size_t>(x->objectCount())),
                  std::vector<int>(static_cast<std::size_t>(x->morphismCount()))};
    std::iota(m.obj.begin(), m.obj.end(), 0);
    for (int p = 0; p < x->objectCount(); ++p)
        for (int a = 0; a < n; ++a) m.mor[p * n + a] = p * ny + hom[a];
    return m;
}

GroupoidMap toGroup(const GroupoidPtr& action, const GroupoidPtr& bg) {
    const int n = bg->morphismCount();
    GroupoidMap m{action, bg, std::vector<int>(static_cast<std::size_t>(action->objectCount()), 0),
                  std::vector<int>(static_cast<std::size_t>(action->morphismCount()))};
    for (int f = 0; f < action->morphismCount(); ++f) m.mor[f] = f % n;
    return m;
}

Cospan randomCospan(std::mt19937& rng) {
    const std::vector<FiniteGroup> groups = {FiniteGroup::trivial(), FiniteGroup::cyclic(2), FiniteGroup::cyclic(3),
                                             FiniteGroup::cyclic(4), FiniteGroup::symmetric3()};
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    const FiniteGroup gc = groups[pick(static_cast<int>(groups.size()))];
    const int kind = pick(3);
    const GroupAction y = kind == 0 ? trivialAction(gc, 1 + pick(2)) : kind == 1 ? leftRegular(gc) : conjugation(gc);
    const auto c = gpd::actionGroupoid(y);
    auto side = [&]() {
        const FiniteGroup ga = groups[pick(static_cast<int>(groups.size()))];
        const auto homs = gpd::homomorphisms(ga, gc);
        const auto& h = homs[pick(static_cast<int>(homs.size()))];
        const auto a = gpd::actionGroupoid(pulledBack(ga, h, y));
        return pulledBackMap(a, c, h);
    };
    auto f = side();
    auto g = side();
    return {std::move(f), std::move(g)};
}

std::vector<GroupoidPtr> smallTestGroupoids() {
    std::vector<GroupoidPtr> ts;
    ts.push_back(gpd::pointGroupoid());
    ts.push_back(gpd::discreteGroupoid({"u", "v"}));
    ts.push_back(gpd::oneObjectGroupoid(FiniteGroup::cyclic(2)));
    ts.push_back(gpd::oneObjectGroupoid(FiniteGroup::cyclic(3)));
    ts.push_back(gpd::actionGroupoid({FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {1, 0}}}));
    ts.push_back(gpd::actionGroupoid({FiniteGroup::cyclic(4), {"a", "b"}, {{0, 1}, {1, 0}, {0, 1}, {1, 0}}}));
    return ts;
}

bool checkFiberProductUniversal(const GroupoidMap& f, const GroupoidMap& g, const GroupoidPtr& t) {
    using Cone = std::tuple<std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>>;
    const auto fp = gpd::fiberProduct(f, g);
    std::set<Cone> cones;
    for (const auto& u : allFunctors(t, f.dom))
        for (const auto& v : allFunctors(t, g.dom))
            for (const auto& s : allNatIsos(gpd::composeMaps(f, u), gpd::composeMaps(g, v)))
                cones.emplace(u.obj, u.mor, v.obj, v.mor, s.component);
    std::set<Cone> induced;
    std::size_t maps = 0;
    for (const auto& w : allFunctors(t, fp.groupoid)) {
        ++maps;
        const auto u = gpd::composeMaps(fp.projA, w);
        const auto v = gpd::composeMaps(fp.projB, w);
        std::vector<int> sigma;
        for (int x = 0; x < t->objectCount(); ++x) sigma.push_back(fp.filler.component[w.obj[x]]);
        induced.emplace(u.obj, u.mor, v.obj, v.mor, sigma);
    }
    return induced.size() == maps && induced == cones;
}

}  // namespace orbiloop::samples
