#include <numeric>
#include <set>

#include "doctest.h"
#include "orbiloop/loop.hpp"
#include "support.hpp"

using namespace orbiloop;
using namespace orbiloop::gpd;
using namespace orbiloop::loop;
using namespace testsupport;

namespace {

GroupoidMap groupMap(const FiniteGroup& a, const FiniteGroup& b, const std::vector<int>& hom) {
    return {oneObjectGroupoid(a), oneObjectGroupoid(b), {0}, hom};
}

std::vector<FiniteGroup> loopGroups() {
    std::vector<FiniteGroup> gs;
    for (int n = 1; n <= 8; ++n) gs.push_back(FiniteGroup::cyclic(n));
    gs.push_back(FiniteGroup::symmetric3());
    gs.push_back(FiniteGroup::dihedral(4));
    gs.push_back(FiniteGroup::quaternion());
    return gs;
}

}  // namespace

TEST_CASE("loop groupoid of BG is the conjugation action groupoid") {
    for (const auto& g : loopGroups()) {
        const auto lx = loopGroupoid(oneObjectGroupoid(g));
        CHECK(validate(*lx.carrier).ok);
        const auto conj = actionGroupoid(conjugation(g));
        GroupoidMap m{lx.carrier, conj, std::vector<int>(g.order()), std::vector<int>(g.order() * g.order())};
        std::iota(m.obj.begin(), m.obj.end(), 0);
        std::iota(m.mor.begin(), m.mor.end(), 0);
        CHECK(isIsomorphism(m));
        CHECK(lx.carrier->componentCount() == static_cast<int>(g.conjugacyClasses().size()));
        for (int o = 0; o < g.order(); ++o) {
            std::vector<int> mus;
            for (int f : lx.carrier->automorphisms(o)) mus.push_back(lx.muOf[f]);
            std::sort(mus.begin(), mus.end());
            CHECK(mus == g.centralizer(lx.loopOf[o]));
        }
        CHECK(!lx.proj.checkFunctor());
    }
}

TEST_CASE("loop groupoid examples: discrete and free actions") {
    const auto d = discreteGroupoid({"a", "b", "c", "d"});
    const auto ld = loopGroupoid(d);
    CHECK(isIsomorphism(ld.proj));

    for (const auto& g : {FiniteGroup::cyclic(3), FiniteGroup::symmetric3()}) {
        const auto x = actionGroupoid(leftRegular(g));
        const auto lx = loopGroupoid(x);
        CHECK(lx.carrier->objectCount() == g.order());
        for (int o = 0; o < lx.carrier->objectCount(); ++o) CHECK(x->isIdentity(lx.loopOf[o]));
        CHECK(isIsomorphism(lx.proj));
    }
}

TEST_CASE("inertia via equalizer") {
    const auto pt = pointGroupoid();
    const auto lpt = loopGroupoid(pt);
    const auto ipt = inertiaViaEqualizer(pt, lpt);
    CHECK(isIsomorphism(ipt.toLoop));

    const auto bs3 = oneObjectGroupoid(FiniteGroup::symmetric3());
    const auto ls3 = loopGroupoid(bs3);
    CHECK(isEquivalence(inertiaViaEqualizer(bs3, ls3).toLoop).ok);

    const auto x = actionGroupoid({FiniteGroup::cyclic(4), {"a", "b"}, {{0, 1}, {1, 0}, {0, 1}, {1, 0}}});
    const auto lx = loopGroupoid(x);
    CHECK(lx.carrier->objectCount() == 4);
    CHECK(isEquivalence(inertiaViaEqualizer(x, lx).toLoop).ok);

    for (const auto& [name, g] : groupoidCatalog()) {
        INFO(name);
        const auto l = loopGroupoid(g);
        const auto in = inertiaViaEqualizer(g, l);
        CHECK(!in.toLoop.checkFunctor());
        CHECK(isEquivalence(in.toLoop).ok);
    }
}

TEST_CASE("loopOfMap") {
    const auto z4 = FiniteGroup::cyclic(4);
    const auto z2 = FiniteGroup::cyclic(2);
    const auto bz4 = oneObjectGroupoid(z4);
    const auto l4 = loopGroupoid(bz4);
    CHECK(loopOfMap(identityMap(bz4), l4, l4) == identityMap(l4.carrier));

    const GroupoidMap q{bz4, oneObjectGroupoid(z2), {0}, {0, 1, 0, 1}};
    const auto l2 = loopGroupoid(q.cod);
    const auto lq = loopOfMap(q, l4, l2);
    CHECK(!lq.checkFunctor());
    for (int o = 0; o < 4; ++o) CHECK(l2.loopOf[lq.obj[o]] == l4.loopOf[o] % 2);

    const auto pt = pointGroupoid();
    const GroupoidMap inc{pt, bz4, {0}, {0}};
    const auto lpt = loopGroupoid(pt);
    const auto li = loopOfMap(inc, lpt, l4);
    CHECK(l4.loopOf[li.obj[0]] == z4.identity());

    // Functoriality and compatibility with the fiberwise product.
    const auto s3 = FiniteGroup::symmetric3();
    const auto z6 = FiniteGroup::cyclic(6);
    for (const auto& h1 : homomorphisms(z6, s3))
        for (const auto& h2 : homomorphisms(s3, z2)) {
            const auto f = groupMap(z6, s3, h1);
            const GroupoidMap g{f.cod, oneObjectGroupoid(z2), {0}, h2};
            const auto la = loopGroupoid(f.dom), lb = loopGroupoid(f.cod), lc = loopGroupoid(g.cod);
            CHECK(loopOfMap(composeMaps(g, f), la, lc) == composeMaps(loopOfMap(g, lb, lc), loopOfMap(f, la, lb)));
            const auto lf = loopOfMap(f, la, lb);
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b) {
                    const int ab = la.objectOf[z6.mul(la.loopOf[a], la.loopOf[b])];
                    CHECK(lb.loopOf[lf.obj[ab]] == s3.mul(lb.loopOf[lf.obj[a]], lb.loopOf[lf.obj[b]]));
                }
        }
}

TEST_CASE("fiberwise multiplication") {
    const auto s3 = FiniteGroup::symmetric3();
    const auto bs3 = oneObjectGroupoid(s3);
    const auto lx = loopGroupoid(bs3);
    const auto m = loopMultiply(lx);
    CHECK(checkGroupAxioms(m, lx));
    for (int o = 0; o < m.pairs.groupoid->objectCount(); ++o) {
        const auto& d = m.pairs.objects[o];
        if (!bs3->isIdentity(d.gamma)) continue;
        CHECK(lx.loopOf[m.multiply.obj[o]] == s3.mul(lx.loopOf[d.a], lx.loopOf[d.b]));
    }
    CHECK(lx.loopOf[m.unit[0]] == s3.identity());
    for (const auto& [name, g] : groupoidCatalog()) {
        INFO(name);
        const auto l = loopGroupoid(g);
        CHECK(checkGroupAxioms(loopMultiply(l), l));
        CHECK(checkCartesianDescription(l));
    }
}

TEST_CASE("loops preserve fiber products") {
    const auto pt = pointGroupoid();
    CHECK(checkLoopPreservesPullback(identityMap(pt), identityMap(pt)));
    const auto bz2 = oneObjectGroupoid(FiniteGroup::cyclic(2));
    const GroupoidMap inc{pt, bz2, {0}, {0}};
    CHECK(checkLoopPreservesPullback(inc, inc));
    std::mt19937 rng(424242);
    for (int trial = 0; trial < 25; ++trial) {
        const auto cs = randomCospan(rng);
        CHECK(checkLoopPreservesPullback(cs.f, cs.g));
    }
}
