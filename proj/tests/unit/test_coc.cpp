#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "orbiloop/coc.hpp"
#include "orbiloop/error.hpp"
#include "support.hpp"

using namespace orbiloop;
using namespace orbiloop::coc;
using cohom::Coeff;
using gpd::FiniteGroup;
using testsupport::groupoidCatalog;

namespace {

GroupPtr grp(FiniteGroup g) { return gpd::shareGroup(std::move(g)); }

NerveCochain randomCochain(const GroupoidPtr& g, int degree, Coeff coeff, std::mt19937& rng, bool normalized = false) {
    std::uniform_int_distribution<int> d(-6, 6);
    return NerveCochain::fromFunction(g, degree, coeff, [&](std::span<const int> t) {
        if (normalized && degree > 0)
            for (int f : t)
                if (g->isIdentity(f)) return Rational(0);
        const int v = d(rng);
        return coeff == Coeff::Z ? Rational(v) : Rational(v, 12);
    });
}

// A nontrivial normalized gerbe cocycle on a groupoid: random coboundary plus, for action
// groupoids of a group with discrete torsion, the pulled-back torsion class.
GerbeCocycle randomGerbe(const GroupoidPtr& g, std::mt19937& rng) {
    auto c = randomCochain(g, 1, Coeff::QmodZ, rng, true);
    return GerbeCocycle(coboundary(c));
}

NerveCochain klein(const GroupoidPtr& bk) {
    // beta((a,b),(a',b')) = a b' / 2 on Z/2 x Z/2 (index 2a + b).
    return NerveCochain::fromFunction(bk, 2, Coeff::QmodZ, [](std::span<const int> t) {
        return Rational((t[0] / 2) * (t[1] % 2), 2);
    });
}

}  // namespace

TEST_CASE("nerve cochain indexing and delta squared") {
    std::mt19937 rng(1);
    for (const auto& [name, g] : groupoidCatalog()) {
        INFO(name);
        for (int deg = 0; deg <= 2; ++deg) {
            NerveCochain c(g, deg, Coeff::Z);
            std::size_t count = 0;
            c.forEachTuple([&](std::span<const int> t, std::size_t i) {
                CHECK(c.index(t) == i);
                ++count;
            });
            CHECK(count == c.size());
        }
        if (g->morphismCount() > 40) continue;
        for (Coeff coeff : {Coeff::Z, Coeff::QmodZ})
            for (int deg = 0; deg <= 1; ++deg) CHECK(coboundary(coboundary(randomCochain(g, deg, coeff, rng))).isZero());
    }
    const auto bz3 = gpd::oneObjectGroupoid(FiniteGroup::cyclic(3));
    CHECK(coboundary(coboundary(randomCochain(bz3, 2, Coeff::Z, rng))).isZero());
    NerveCochain c(gpd::actionGroupoid(testsupport::leftRegular(FiniteGroup::cyclic(2))), 2, Coeff::Z);
    CHECK_THROWS_AS(c.index(std::vector<int>{1, 1}), PreconditionError);
}

TEST_CASE("extension groupoid") {
    const auto z3 = FiniteGroup::cyclic(3);
    const auto bz3 = gpd::oneObjectGroupoid(z3);
    const auto trivialExt = extensionGroupoid(GerbeCocycle(NerveCochain(bz3, 2, Coeff::QmodZ)), 4);
    CHECK(gpd::validate(*trivialExt.groupoid).ok);
    const auto prod = gpd::oneObjectGroupoid(FiniteGroup::product(z3, FiniteGroup::cyclic(4)));
    gpd::GroupoidMap iso{trivialExt.groupoid, prod, {0}, std::vector<int>(12)};
    std::iota(iso.mor.begin(), iso.mor.end(), 0);
    CHECK(gpd::isIsomorphism(iso));

    const auto bz2 = gpd::oneObjectGroupoid(FiniteGroup::cyclic(2));
    auto beta = NerveCochain(bz2, 2, Coeff::QmodZ);
    beta.set(std::vector<int>{1, 1}, Rational(1, 2));
    const auto ext = extensionGroupoid(GerbeCocycle(beta), 2);
    CHECK(gpd::validate(*ext.groupoid).ok);
    CHECK(!ext.projection.checkFunctor());
    // Oracle: the order-4 table has an element of order 4, so it is Z/4.
    const auto& E = *ext.groupoid;
    int maxOrder = 0;
    for (int f = 0; f < E.morphismCount(); ++f) {
        int k = 1, p = f;
        while (!E.isIdentity(p)) {
            p = E.compose(f, p);
            ++k;
        }
        maxOrder = std::max(maxOrder, k);
    }
    CHECK(maxOrder == 4);
    CHECK_THROWS_AS(extensionGroupoid(GerbeCocycle(beta), 3), PreconditionError);

    // e_phi on Z/N x Gamma: (n,g,z)(n',g',z') = (n+n', g+g', z + z' + n' phi(g)).
    const auto gamma = grp(FiniteGroup::cyclic(2));
    const auto phi = cohom::characters(gamma)[1];
    const auto e = buildEPhi(gamma, phi, 4);
    const auto ee = extensionGroupoid(e.cocycle, 2);
    CHECK(gpd::validate(*ee.groupoid).ok);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
            for (int z = 0; z < 2; ++z)
                for (int w = 0; w < 2; ++w) {
                    const int n = a / 2, g = a % 2, n2 = b / 2, g2 = b % 2;
                    const int prodIdx = ((n + n2) % 4) * 2 + (g + g2) % 2;
                    const int zz = (z + w + n2 * g) % 2;
                    CHECK(ee.groupoid->compose(ee.morphism(a, z), ee.morphism(b, w)) == ee.morphism(prodIdx, zz));
                }
}

TEST_CASE("transgressBundle examples") {
    std::mt19937 rng(2);
    for (const auto& [name, g] : groupoidCatalog()) {
        const auto lx = loop::loopGroupoid(g);
        const auto phi = coboundary(randomCochain(g, 0, Coeff::QmodZ, rng));
        for (const auto& v : transgressBundle(phi, lx)) CHECK(v == 0);
    }
    for (int n = 1; n <= 8; ++n) {
        const auto gp = grp(FiniteGroup::cyclic(n));
        const auto bg = gpd::oneObjectGroupoid(*gp);
        const auto lx = loop::loopGroupoid(bg);
        for (const auto& phi : cohom::characters(gp)) {
            const auto h = transgressBundle(NerveCochain::fromBar(phi, bg), lx);
            for (int s = 0; s < n; ++s) CHECK(h[lx.objectOf[s]] == phi.at(std::vector<int>{s}));
        }
    }
    const auto swap = gpd::actionGroupoid({FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {1, 0}}});
    const auto ls = loop::loopGroupoid(swap);
    const auto phi = NerveCochain::fromFunction(swap, 1, Coeff::QmodZ, [&](std::span<const int> t) {
        return Rational(t[0] % 2, 2);
    });
    REQUIRE(isCocycle(phi));
    for (const auto& v : transgressBundle(phi, ls)) CHECK(v == 0);
}

TEST_CASE("chiBar examples and h = chiBar") {
    for (int n = 1; n <= 8; ++n) {
        const auto gp = grp(FiniteGroup::cyclic(n));
        const auto bg = gpd::oneObjectGroupoid(*gp);
        const auto lx = loop::loopGroupoid(bg);
        for (const auto& v : chiBar(NerveCochain(bg, 2, Coeff::Z), lx)) CHECK(v == 0);
        for (const auto& phi : cohom::characters(gp)) {
            const auto cb = chiBar(NerveCochain::fromBar(cohom::bockstein(phi), bg), lx);
            for (int s = 0; s < n; ++s) CHECK(cb[lx.objectOf[s]] == phi.at(std::vector<int>{s}));
            CHECK(checkHEqualsChiBar(NerveCochain::fromBar(phi, bg), lx).equal);
        }
        std::mt19937 rng(n);
        const auto cob = coboundary(randomCochain(bg, 1, Coeff::Z, rng));
        for (const auto& v : chiBar(cob, lx)) CHECK(v == 0);
    }
    const auto s3 = grp(FiniteGroup::symmetric3());
    const auto bs3 = gpd::oneObjectGroupoid(*s3);
    const auto ls3 = loop::loopGroupoid(bs3);
    for (const auto& phi : cohom::characters(s3)) CHECK(checkHEqualsChiBar(NerveCochain::fromBar(phi, bs3), ls3).equal);
    std::mt19937 rng(77);
    for (const auto& [name, g] : groupoidCatalog()) {
        const auto lx = loop::loopGroupoid(g);
        const auto r = checkHEqualsChiBar(coboundary(randomCochain(g, 0, Coeff::QmodZ, rng)), lx);
        CHECK(r.equal);
        for (const auto& v : r.h) CHECK(v == 0);
    }
}

TEST_CASE("twisted sectors") {
    const auto z4 = grp(FiniteGroup::cyclic(4));
    const auto bz4 = gpd::oneObjectGroupoid(*z4);
    const auto l4 = loop::loopGroupoid(bz4);
    CHECK(twistedSectors(NerveCochain(bz4, 1, Coeff::QmodZ), l4).size() == 1);
    const auto phi1 = NerveCochain::fromFunction(bz4, 1, Coeff::QmodZ, [](std::span<const int> t) { return Rational(t[0], 4); });
    const auto ts = twistedSectors(phi1, l4);
    REQUIRE(ts.size() == 4);
    std::vector<Rational> keys;
    for (const auto& [k, v] : ts) {
        keys.push_back(k);
        CHECK(v.size() == 1);
    }
    CHECK(keys == std::vector<Rational>{0, Rational(1, 4), Rational(1, 2), Rational(3, 4)});

    const auto k = gpd::oneObjectGroupoid(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    const auto lk = loop::loopGroupoid(k);
    const auto first = NerveCochain::fromFunction(k, 1, Coeff::QmodZ, [](std::span<const int> t) { return Rational(t[0] / 2, 2); });
    const auto tk = twistedSectors(first, lk);
    REQUIRE(tk.size() == 2);
    CHECK(tk.at(0).size() == 2);
    CHECK(tk.at(Rational(1, 2)).size() == 2);
}

TEST_CASE("transgressGerbe examples") {
    const auto bs3 = gpd::oneObjectGroupoid(FiniteGroup::symmetric3());
    const auto ls3 = loop::loopGroupoid(bs3);
    CHECK(transgressGerbe(GerbeCocycle(NerveCochain(bs3, 2, Coeff::QmodZ)), ls3).isZero());

    for (int n = 2; n <= 4; ++n) {
        const auto zn = FiniteGroup::cyclic(n);
        const auto g = gpd::oneObjectGroupoid(FiniteGroup::product(zn, zn));
        const auto beta = GerbeCocycle(NerveCochain::fromFunction(g, 2, Coeff::QmodZ, [n](std::span<const int> t) {
            return Rational((t[0] / n) * (t[1] % n), n);
        }));
        const auto lx = loop::loopGroupoid(g);
        const auto tau = transgressGerbe(beta, lx);
        for (int f = 0; f < lx.carrier->morphismCount(); ++f) {
            const int gamma = lx.loopOf[lx.carrier->src(f)], h = lx.muOf[f];
            const int a = gamma / n, b = gamma % n, a2 = h / n, b2 = h % n;
            Rational expect(((a2 * b - a * b2) % n + n) % n, n);
            expect.canonicalize();
            CHECK(tau(std::initializer_list<int>{f}) == expect);
            // Antisymmetry of the commutator pairing.
            const int fSwap = lx.morphismAt(lx.objectOf[h], gamma);
            CHECK(Rational(tau(std::initializer_list<int>{f}) + tau(std::initializer_list<int>{fSwap})).get_num() %
                      1 == 0);
        }
    }

    // e_phi: holonomy along the Z/N direction is phi.
    const auto gamma = grp(FiniteGroup::cyclic(3));
    for (const auto& phi : cohom::characters(gamma)) {
        const auto e = buildEPhi(gamma, phi, 9);
        const auto lx = loop::loopGroupoid(e.cocycle.base());
        const auto tau = transgressGerbe(e.cocycle, lx);
        for (int s = 0; s < 3; ++s) {
            const int f = lx.morphismAt(lx.objectOf[s], 1 * 3 + 0);
            Rational g = -tau(std::initializer_list<int>{f}) + 1;
            if (g >= 1) g -= 1;
            CHECK(g == phi.at(std::vector<int>{s}));
        }
    }
}

TEST_CASE("transgression properties") {
    std::mt19937 rng(31);
    for (const auto& [name, g] : groupoidCatalog()) {
        INFO(name);
        if (g->morphismCount() > 64) continue;
        const auto lx = loop::loopGroupoid(g);
        // tau(delta c) = delta(c restricted to loops).
        const auto c = randomCochain(g, 1, Coeff::QmodZ, rng, true);
        const auto tau = transgressGerbe(GerbeCocycle(coboundary(c)), lx);
        const auto cl = NerveCochain::fromFunction(lx.carrier, 0, Coeff::QmodZ, [&](std::span<const int> t) {
            return c(std::initializer_list<int>{lx.loopOf[t[0]]});
        });
        CHECK(tau == coboundary(cl));
        // Conjugation transport of the inner local system.
        const auto beta = randomGerbe(g, rng);
        const auto t2 = transgressGerbe(beta, lx);
        const auto& L = *lx.carrier;
        for (int nu = 0; nu < L.morphismCount(); ++nu)
            for (int a : L.automorphisms(L.src(nu))) {
                const int moved = L.compose(L.compose(nu, a), L.inv(nu));
                CHECK(t2(std::initializer_list<int>{moved}) == t2(std::initializer_list<int>{a}));
            }
    }
    // Abelian one-object bases: tau(gamma, h) = beta(h, gamma) - beta(gamma, h).
    for (const auto& gp : {FiniteGroup::cyclic(4), FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))}) {
        const auto g = gpd::oneObjectGroupoid(gp);
        const auto lx = loop::loopGroupoid(g);
        auto b = klein(gpd::oneObjectGroupoid(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))));
        const auto beta = gp.order() == 4 && gp.isCyclic()
                              ? randomGerbe(g, rng)
                              : GerbeCocycle(klein(g));
        const auto tau = transgressGerbe(beta, lx);
        for (int f = 0; f < lx.carrier->morphismCount(); ++f) {
            const int gamma = lx.loopOf[lx.carrier->src(f)], h = lx.muOf[f];
            Rational expect = beta(h, gamma) - beta(gamma, h) + 1;
            if (expect >= 1) expect -= 1;
            CHECK(tau(std::initializer_list<int>{f}) == expect);
        }
    }
    // Functoriality of transgressBundle under pullback.
    const auto s3 = FiniteGroup::symmetric3();
    const auto x = gpd::actionGroupoid(testsupport::conjugation(s3));
    const auto bs3 = gpd::oneObjectGroupoid(s3);
    const auto f = testsupport::toGroup(x, bs3);
    const auto lx = loop::loopGroupoid(x), ly = loop::loopGroupoid(bs3);
    const auto lf = loop::loopOfMap(f, lx, ly);
    for (const auto& phi : cohom::characters(gpd::shareGroup(s3))) {
        const auto phiY = NerveCochain::fromBar(phi, bs3);
        const auto hx = transgressBundle(phiY.pullback(f), lx);
        const auto hy = transgressBundle(phiY, ly);
        for (int o = 0; o < lx.carrier->objectCount(); ++o) CHECK(hx[o] == hy[lf.obj[o]]);
    }
}

TEST_CASE("inner local system") {
    const auto bs3 = gpd::oneObjectGroupoid(FiniteGroup::symmetric3());
    const auto ls3 = loop::loopGroupoid(bs3);
    for (const auto& s : innerLocalSystem(GerbeCocycle(NerveCochain(bs3, 2, Coeff::QmodZ)), ls3).sectors)
        for (const auto& v : s.values) CHECK(v == 0);

    const auto bk = gpd::oneObjectGroupoid(FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)));
    const auto lk = loop::loopGroupoid(bk);
    const auto spec = innerLocalSystem(GerbeCocycle(klein(bk)), lk);
    CHECK(spec.sectors.size() == 4);
    for (const auto& s : spec.sectors) {
        CHECK(s.automorphisms.size() == 4);
        const bool trivial = std::all_of(s.values.begin(), s.values.end(), [](const Rational& v) { return v == 0; });
        CHECK(trivial == (lk.loopOf[s.loopObject] == 0));
    }

    // Cyclic groups: every class is trivial, so every epsilon is trivial.
    for (int n = 2; n <= 6; ++n) {
        const auto bz = gpd::oneObjectGroupoid(FiniteGroup::cyclic(n));
        const auto lz = loop::loopGroupoid(bz);
        for (int num = 0; num < n; ++num) {
            // Carry cocycle times num/n plus a coboundary.
            auto beta = NerveCochain::fromFunction(bz, 2, Coeff::QmodZ, [&](std::span<const int> t) {
                return Rational(t[0] + t[1] >= n ? num : 0, n * 7);
            });
            std::mt19937 rng(num);
            beta += coboundary(randomCochain(bz, 1, Coeff::QmodZ, rng, true));
            for (const auto& s : innerLocalSystem(GerbeCocycle(beta), lz).sectors)
                for (const auto& v : s.values) CHECK(v == 0);
        }
    }
}

TEST_CASE("buildEPhi") {
    for (int m = 1; m <= 6; ++m) {
        const auto gamma = grp(FiniteGroup::cyclic(m));
        for (const auto& phi : cohom::characters(gamma)) {
            const int ord = static_cast<int>(phi.at(std::vector<int>{1 % m}).get_den().get_si());
            const auto e = buildEPhi(gamma, phi, ord * m);
            CHECK(e.cocycle.exhaustivelyChecked());
            if (phi.isZero()) CHECK(e.cocycle.beta().isZero());
        }
    }
    const auto z2 = grp(FiniteGroup::cyclic(2));
    const auto phi = cohom::characters(z2)[1];
    const auto e = buildEPhi(z2, phi, 4);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) CHECK(e.cocycle(a, b) == Rational((b / 2) * (a % 2) % 2) / 2);
    CHECK_THROWS_AS(buildEPhi(z2, phi, 3), PreconditionError);
    CHECK_THROWS_AS(buildEPhi(grp(FiniteGroup::symmetric3()), cohom::characters(grp(FiniteGroup::symmetric3()))[0], 12),
                    PreconditionError);
}

TEST_CASE("holonomy theorem small cases") {
    const auto z2 = grp(FiniteGroup::cyclic(2));
    for (const auto& phi : cohom::characters(z2)) {
        const auto r = verifyHolonomyTheorem(z2, phi, 8);
        CHECK(r.verdict);
        CHECK(r.direct == std::vector<Rational>{0, phi.at(std::vector<int>{1})});
    }
    const auto z4 = grp(FiniteGroup::cyclic(4));
    const auto phi = cohom::characters(z4)[1];
    CHECK(verifyHolonomyTheorem(z4, phi, 16).verdict);
}
