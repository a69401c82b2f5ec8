#include <random>

#include "doctest.h"
#include "orbiloop/catalog.hpp"
#include "orbiloop/error.hpp"
#include "orbiloop/zcomplex.hpp"

using namespace orbiloop;
using namespace orbiloop::zc;

namespace {

std::vector<Rational> randomCochain(int n, std::mt19937& rng, int spread = 3) {
    std::uniform_int_distribution<int> d(-spread, spread);
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = d(rng);
    return c;
}

std::vector<Rational> delta(const SimplicialComplex& k, const std::vector<Rational>& c, int p) {
    return simp::toDense(simp::coboundaryMatrix<Rational>(k, p).apply(simp::toSparse(c)), k.count(p + 1));
}

std::vector<Rational> randomExactLambda(const SimplicialComplex& k, std::mt19937& rng) {
    if (k.dimension() < 3) return {};
    return delta(k, randomCochain(k.count(2), rng), 2);
}

std::vector<int> betti(const SimplicialComplex& k) { return simp::simplicialCohomology<Rational>(k).dims(); }

Rational pairingOf(const SimplicialComplex& k, const std::vector<Rational>& o, const Element& w, const Element& a) {
    return dualityPairing(k, o, w, a);
}

}  // namespace

TEST_CASE("lambda = 0 gives H^*(K)[z]") {
    for (const auto& n : catalog::complexNames()) {
        INFO(n);
        const auto k = *catalog::complex(n);
        const auto t = buildTwisted(k, std::vector<Rational>(static_cast<std::size_t>(k.count(3))));
        CHECK(twistedCohomology(t, t.mMax()) == shiftedBetti(betti(k), t.mMax()));
    }
    const auto s3 = *catalog::complex("S3");
    const auto t = buildTwisted(s3, std::vector<Rational>(5));
    const auto d = twistedCohomology(t, 6);
    CHECK(d == std::vector<int>{1, 0, 1, 1, 1, 1, 1});
}

TEST_CASE("S3 with lambda a multiple of the generator") {
    const auto s3 = *catalog::complex("S3");
    const auto gen = topGenerator(s3);
    const auto untwisted = buildTwisted(s3, std::vector<Rational>(gen.size()));
    const auto base = twistedCohomology(untwisted, untwisted.mMax());
    const auto basePeriodic = periodicCohomology(s3, std::vector<Rational>(gen.size()));
    CHECK(basePeriodic == std::pair{1, 1});
    CHECK(stableDims(base, 3) == basePeriodic);
    for (int mult = 1; mult <= 3; ++mult) {
        INFO(mult);
        std::vector<Rational> lambda = gen;
        for (auto& x : lambda) x *= mult;
        const auto t = buildTwisted(s3, lambda);
        const auto dims = twistedCohomology(t, t.mMax());
        std::vector<int> expect(dims.size(), 0);
        expect[0] = 1;
        CHECK(dims == expect);
        const auto periodic = periodicCohomology(s3, lambda);
        CHECK(periodic == std::pair{0, 0});
        CHECK(stableDims(dims, 3) == periodic);
        CHECK(periodic.first < basePeriodic.first);
        CHECK(periodic.second < basePeriodic.second);
        CHECK(spectralE2(t, t.mMax()) == dims);
    }
}

TEST_CASE("E2 degenerates and stable dims match the periodic complex") {
    std::mt19937 rng(11);
    std::vector<SimplicialComplex> ks;
    for (const auto& n : catalog::complexNames()) ks.push_back(*catalog::complex(n));
    ks.push_back(simp::simplexBoundary(5));
    ks.push_back(simp::fullSimplex(3));
    for (const auto& k : ks) {
        for (int trial = 0; trial < 3; ++trial) {
            auto lambda = randomExactLambda(k, rng);
            if (k.dimension() == 3 && fundamentalCycle(k)) {
                const auto g = topGenerator(k);
                for (std::size_t i = 0; i < g.size(); ++i) lambda[i] += g[i] * (trial + 1);
            }
            if (lambda.empty()) lambda.assign(static_cast<std::size_t>(k.count(3)), Rational(0));
            const auto t = buildTwisted(k, lambda);
            const auto dims = twistedCohomology(t, t.mMax());
            INFO(k.dimension(), " ", trial);
            if (k.dimension() <= 4) CHECK(spectralE2(t, t.mMax()) == dims);
            CHECK(stableDims(dims, k.dimension()) == periodicCohomology(k, lambda));
            CHECK(dims[0] <= betti(k)[0]);
        }
    }
}

TEST_CASE("exact lambda leaves the z-model unchanged") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 4; ++trial) {
        const auto k = simp::simplexBoundary(5);
        const auto lambda = randomExactLambda(k, rng);
        const auto t = buildTwisted(k, lambda);
        CHECK(twistedCohomology(t, t.mMax()) == shiftedBetti(betti(k), t.mMax()));
    }
}

TEST_CASE("local systems") {
    const auto t2 = *catalog::complex("T2");
    // A rational 1-cocycle divided by 3 and reduced mod 1.
    const auto h1 = simp::simplicialCohomology<Rational>(t2).degrees[1];
    simp::LocalSystem l{std::vector<Rational>(static_cast<std::size_t>(t2.count(1)))};
    for (const auto& [i, v] : h1.representative(0)) l.edge[static_cast<std::size_t>(i)] = QmodZ::fromRational(v / 3).lift();
    REQUIRE(simp::isFlat(t2, l));
    {
        const auto t = buildTwisted(t2, {}, l);
        const auto dims = twistedCohomology(t, t.mMax());
        CHECK(dims == std::vector<int>(dims.size(), 0));
        CHECK(spectralE2(t, t.mMax()) == dims);
    }
    // Circle with a nontrivial holonomy of order 3.
    const auto s1 = *catalog::complex("S1");
    simp::LocalSystem c{std::vector<Rational>(static_cast<std::size_t>(s1.count(1)))};
    c.edge[0] = Rational(1, 3);
    REQUIRE(simp::isFlat(s1, c));
    const auto t = buildTwisted(s1, {}, c);
    const auto dims = twistedCohomology(t, t.mMax());
    CHECK(dims == std::vector<int>(dims.size(), 0));
    CHECK(periodicCohomology(s1, {}, c) == std::pair{0, 0});
    // A coboundary local system is trivial.
    simp::LocalSystem triv{std::vector<Rational>(static_cast<std::size_t>(s1.count(1)))};
    for (int e = 0; e < s1.count(1); ++e) {
        const auto& v = s1.simplex(1, e);
        Rational x = Rational(v[0], 5) - Rational(v[1], 5);
        triv.edge[static_cast<std::size_t>(e)] = QmodZ::fromRational(x).lift();
    }
    REQUIRE(simp::isFlat(s1, triv));
    const auto tt = buildTwisted(s1, {}, triv);
    CHECK(twistedCohomology(tt, tt.mMax()) == shiftedBetti(betti(s1), tt.mMax()));
}

TEST_CASE("preconditions") {
    std::mt19937 rng(3);
    const auto d4 = simp::fullSimplex(4);
    try {
        (void)buildTwisted(d4, randomCochain(d4.count(3), rng));
        FAIL("accepted a non-closed lambda");
    } catch (const PreconditionError& e) {
        CHECK(e.name() == "closed");
    }
    const auto s6 = simp::simplexBoundary(7);
    bool rejected = false;
    for (int trial = 0; trial < 5 && !rejected; ++trial) {
        try {
            (void)buildTwisted(s6, randomExactLambda(s6, rng), std::nullopt, 0);
        } catch (const PreconditionError& e) {
            CHECK(e.name() == "square-zero");
            rejected = true;
        }
    }
    CHECK(rejected);
    const auto s1 = *catalog::complex("S1");
    simp::LocalSystem bad{std::vector<Rational>(static_cast<std::size_t>(s1.count(1)))};
    const auto t2 = *catalog::complex("T2");
    simp::LocalSystem notFlat{std::vector<Rational>(static_cast<std::size_t>(t2.count(1)))};
    notFlat.edge[0] = Rational(1, 2);
    CHECK_THROWS_AS(buildTwisted(t2, {}, notFlat), PreconditionError);
    CHECK_THROWS_AS(buildTwisted(s1, {Rational(1)}), PreconditionError);
}

TEST_CASE("gauge transform intertwines the differentials") {
    std::mt19937 rng(17);
    const auto s3 = *catalog::complex("S3");
    for (int trial = 0; trial < 5; ++trial) {
        const auto mu = randomCochain(s3.count(2), rng);
        const auto g = checkGaugeTransform(s3, mu, 7, trial % 2 ? topGenerator(s3) : std::vector<Rational>{});
        REQUIRE(g.applicable);
        CHECK(g.intertwines);
        CHECK(g.twisted == g.untwisted);
        CHECK(g.periodicTwisted == g.periodicUntwisted);
    }
    // Higher dimension: a single 2-simplex support satisfies mu cup mu = 0.
    int applicable = 0, rejected = 0;
    for (const auto& k : {simp::simplexBoundary(5), simp::simplexBoundary(6)}) {
        for (int s = 0; s < k.count(2); s += 3) {
            std::vector<Rational> mu(static_cast<std::size_t>(k.count(2)));
            mu[static_cast<std::size_t>(s)] = 1;
            const auto g = checkGaugeTransform(k, mu, k.dimension() + 2);
            if (!g.applicable) {
                ++rejected;
                CHECK(!g.reason.empty());
                continue;
            }
            ++applicable;
            CHECK(g.intertwines);
            CHECK(g.twisted == g.untwisted);
            CHECK(g.periodicTwisted == g.periodicUntwisted);
        }
        const auto g = checkGaugeTransform(k, randomCochain(k.count(2), rng), k.dimension() + 2);
        CHECK(!g.applicable);
    }
    CHECK(applicable > 0);
    MESSAGE("gauge: ", applicable, " applicable, ", rejected, " rejected");
}

TEST_CASE("duality pairing is adjoint") {
    std::mt19937 rng(2024);
    struct Case {
        SimplicialComplex k;
        std::vector<Rational> lambda;
    };
    std::vector<Case> cases;
    const auto s3 = *catalog::complex("S3");
    auto lam3 = topGenerator(s3);
    for (auto& x : lam3) x *= 2;
    cases.push_back({s3, lam3});
    cases.push_back({*catalog::complex("T2"), {}});
    const auto s5 = simp::simplexBoundary(6);
    cases.push_back({s5, randomExactLambda(s5, rng)});
    int checked = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto& c = cases[static_cast<std::size_t>(trial) % cases.size()];
        const auto& k = c.k;
        const int top = k.dimension();
        const auto o = *fundamentalCycle(k);
        std::uniform_int_distribution<int> deg(-4, top - 1);
        const int tw = deg(rng);  // total degree p - 2n of omega
        Element omega, alpha;
        for (int n = 0; n <= 3; ++n) {
            const int p = tw + 2 * n;
            if (p >= 0 && p <= top) omega.push_back({n, p, randomCochain(k.count(p), rng)});
        }
        const int ta = top - tw - 1;  // total degree q + 2m of alpha
        for (int m = 0; m <= 4; ++m) {
            const int q = ta - 2 * m;
            if (q >= 0 && q <= top) alpha.push_back({m, q, randomCochain(k.count(q), rng)});
        }
        const auto lhs = pairingOf(k, o, dPrimeLambda(k, c.lambda, omega), alpha);
        const auto rhs = pairingOf(k, o, omega, dLambda(k, c.lambda, alpha));
        const int sign = (tw % 2 == 0) ? -1 : 1;
        CHECK(lhs == rhs * sign);
        ++checked;
    }
    CHECK(checked == 50);
}

TEST_CASE("dLambda agrees with the slice differential") {
    std::mt19937 rng(8);
    const auto s3 = *catalog::complex("S3");
    const auto lambda = topGenerator(s3);
    const auto t = buildTwisted(s3, lambda);
    for (int m = 0; m < t.mMax(); ++m) {
        const auto blocks = t.blocks(m);
        Element a;
        linalg::SparseVec<Cyclo> v;
        int off = 0;
        for (const auto& [j, p] : blocks) {
            auto c = randomCochain(s3.count(p), rng);
            for (int i = 0; i < s3.count(p); ++i)
                if (sgn(c[static_cast<std::size_t>(i)]) != 0) v.emplace_back(off + i, Cyclo(c[static_cast<std::size_t>(i)]));
            a.push_back({j, p, std::move(c)});
            off += s3.count(p);
        }
        const auto image = t.differential(m).apply(v);
        std::vector<Cyclo> dense(static_cast<std::size_t>(t.sliceDim(m + 1)), Cyclo(0));
        for (const auto& [i, x] : image) dense[static_cast<std::size_t>(i)] = x;
        const auto next = t.blocks(m + 1);
        std::vector<Cyclo> expect(dense.size(), Cyclo(0));
        for (const auto& term : dLambda(s3, lambda, a)) {
            int o = 0;
            for (const auto& [j, p] : next) {
                if (j == term.power && p == term.degree)
                    for (std::size_t i = 0; i < term.cochain.size(); ++i)
                        expect[static_cast<std::size_t>(o) + i] = expect[static_cast<std::size_t>(o) + i] + Cyclo(term.cochain[i]);
                o += s3.count(p);
            }
        }
        for (std::size_t i = 0; i < dense.size(); ++i) CHECK((dense[i] - expect[i]).isZero());
    }
}

TEST_CASE("pairing examples") {
    const auto s3 = *catalog::complex("S3");
    const auto o = *fundamentalCycle(s3);
    const Element one{{0, 0, std::vector<Rational>(static_cast<std::size_t>(s3.count(0)), Rational(1))}};
    CHECK(dualityPairing(s3, o, one, Element{{0, 3, topGenerator(s3)}}) == 1);
    CHECK(dualityPairing(s3, o, one, Element{{1, 3, topGenerator(s3)}}) == 0);
    const Element u2{{2, 0, std::vector<Rational>(static_cast<std::size_t>(s3.count(0)), Rational(1))}};
    CHECK(dualityPairing(s3, o, u2, Element{{2, 3, topGenerator(s3)}}) == 2);
    CHECK_THROWS_AS(topGenerator(simp::fullSimplex(2)), PreconditionError);
}
