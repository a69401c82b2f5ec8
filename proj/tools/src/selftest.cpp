#include "selftest.hpp"

#include <random>
#include <set>

#include "io.hpp"
#include "orbiloop/catalog.hpp"
#include "orbiloop/coc.hpp"
#include "orbiloop/deloc.hpp"
#include "orbiloop/error.hpp"
#include "orbiloop/loop.hpp"
#include "orbiloop/samples.hpp"
#include "orbiloop/zcomplex.hpp"
#include "orbiloop/zxgamma.hpp"

namespace orbiloop::cli {

namespace {

using gpd::FiniteGroup;
using gpd::GroupoidPtr;
using cohom::Coeff;

// A check returns an empty string on success, otherwise a description of the failure.
using Check = std::function<std::string()>;

struct Entry {
    std::string module;
    std::string name;
    Check run;
};

std::vector<std::pair<std::string, GroupoidPtr>> groupoids() {
    std::vector<std::pair<std::string, GroupoidPtr>> out;
    for (const auto& n : catalog::groupoidNames()) {
        const auto g = *catalog::groupoid(n);
        if (g->morphismCount() <= 64) out.emplace_back(n, g);
    }
    return out;
}

Rational reduce(const Rational& r) { return QmodZ::fromRational(r).lift(); }

std::vector<Rational> randomVec(int n, std::mt19937& rng, int spread = 3) {
    std::uniform_int_distribution<int> d(-spread, spread);
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = d(rng);
    return c;
}

coc::NerveCochain randomNerve(const GroupoidPtr& g, int degree, Coeff coeff, std::mt19937& rng, bool normalized) {
    std::uniform_int_distribution<int> d(-6, 6);
    return coc::NerveCochain::fromFunction(g, degree, coeff, [&](std::span<const int> t) {
        if (normalized)
            for (int f : t)
                if (g->isIdentity(f)) return Rational(0);
        const int v = d(rng);
        return coeff == Coeff::Z ? Rational(v) : Rational(v, 12);
    });
}

cohom::BarCochain randomBar(const gpd::GroupPtr& g, int degree, Coeff coeff, std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-6, 6);
    return cohom::BarCochain::fromFunction(g, degree, coeff, [&](std::span<const int>) {
        const int v = d(rng);
        return coeff == Coeff::Z ? Rational(v) : Rational(v, 12);
    });
}

std::vector<Entry> gpdChecks() {
    std::vector<Entry> e;
    e.push_back({"gpd", "catalog-validates", [] {
                     for (const auto& [n, g] : groupoids()) {
                         const auto r = gpd::validate(*g);
                         if (!r.ok) return n + ": " + r.axiom;
                     }
                     return std::string();
                 }});
    e.push_back({"gpd", "fiber-product-universal", [] {
                     std::mt19937 rng(7);
                     const auto tests = samples::smallTestGroupoids();
                     for (int trial = 0; trial < 3; ++trial) {
                         const auto cs = samples::randomCospan(rng);
                         if (cs.f.dom->morphismCount() * cs.g.dom->morphismCount() > 64) continue;
                         for (std::size_t t = 0; t < std::min<std::size_t>(tests.size(), 3); ++t)
                             if (!samples::checkFiberProductUniversal(cs.f, cs.g, tests[t]))
                                 return "cospan " + std::to_string(trial) + ", test groupoid " + std::to_string(t);
                     }
                     return std::string();
                 }});
    e.push_back({"gpd", "equalizer-filler", [] {
                     for (const auto& [n, g] : groupoids()) {
                         const auto id = gpd::identityMap(g);
                         const auto eq = gpd::equalizer(id, id);
                         if (auto w = eq.filler.checkNatural()) return n + ": " + *w;
                         if (auto w = eq.toX.checkFunctor()) return n + ": " + *w;
                     }
                     return std::string();
                 }});
    e.push_back({"gpd", "equivalence-under-relabel", [] {
                     std::mt19937 rng(3);
                     for (const auto& [n, g] : groupoids()) {
                         const auto r = samples::relabel(g, rng);
                         if (!gpd::isIsomorphism(r) || !gpd::isEquivalence(r).ok) return n;
                     }
                     return std::string();
                 }});
    return e;
}

std::vector<Entry> loopChecks() {
    std::vector<Entry> e;
    e.push_back({"loop", "inertia-equivalence", [] {
                     for (const auto& [n, g] : groupoids()) {
                         const auto lx = loop::loopGroupoid(g);
                         const auto r = gpd::isEquivalence(loop::inertiaViaEqualizer(g, lx).toLoop);
                         if (!r.ok) return n + ": " + r.witness;
                     }
                     return std::string();
                 }});
    e.push_back({"loop", "sectors-are-conjugacy-classes", [] {
                     for (const auto& n : catalog::groupNames()) {
                         const auto g = *catalog::group(n);
                         const auto s = loop::sectors(loop::loopGroupoid(gpd::oneObjectGroupoid(g)));
                         if (s.size() != g.conjugacyClasses().size()) return n;
                         for (const auto& sec : s)
                             if (sec.centralizerOrder * sec.componentSize != g.order()) return n + ": orbit-stabilizer";
                     }
                     return std::string();
                 }});
    e.push_back({"loop", "functorial-and-homomorphic", [] {
                     const auto z6 = FiniteGroup::cyclic(6), s3 = FiniteGroup::symmetric3(), z2 = FiniteGroup::cyclic(2);
                     const auto b6 = gpd::oneObjectGroupoid(z6), b3 = gpd::oneObjectGroupoid(s3), b2 = gpd::oneObjectGroupoid(z2);
                     const auto la = loop::loopGroupoid(b6), lb = loop::loopGroupoid(b3), lc = loop::loopGroupoid(b2);
                     if (!(loop::loopOfMap(gpd::identityMap(b3), lb, lb) == gpd::identityMap(lb.carrier))) return std::string("identity");
                     for (const auto& h1 : gpd::homomorphisms(z6, s3))
                         for (const auto& h2 : gpd::homomorphisms(s3, z2)) {
                             const gpd::GroupoidMap f{b6, b3, {0}, h1}, g{b3, b2, {0}, h2};
                             const auto lf = loop::loopOfMap(f, la, lb);
                             if (!(loop::loopOfMap(gpd::composeMaps(g, f), la, lc) ==
                                   gpd::composeMaps(loop::loopOfMap(g, lb, lc), lf)))
                                 return std::string("composition");
                             for (int a = 0; a < 6; ++a)
                                 for (int b = 0; b < 6; ++b) {
                                     const int ab = la.objectOf[z6.mul(la.loopOf[a], la.loopOf[b])];
                                     if (lb.loopOf[lf.obj[ab]] != s3.mul(lb.loopOf[lf.obj[a]], lb.loopOf[lf.obj[b]]))
                                         return std::string("product");
                                 }
                         }
                     return std::string();
                 }});
    e.push_back({"loop", "group-object-and-cartesian", [] {
                     for (const auto& [n, g] : groupoids()) {
                         const auto l = loop::loopGroupoid(g);
                         if (!loop::checkGroupAxioms(loop::loopMultiply(l), l)) return n + ": group axioms";
                         if (!loop::checkCartesianDescription(l)) return n + ": cartesian";
                     }
                     return std::string();
                 }});
    e.push_back({"loop", "preserves-fiber-products", [] {
                     std::mt19937 rng(424242);
                     for (int trial = 0; trial < 10; ++trial) {
                         const auto cs = samples::randomCospan(rng);
                         if (!loop::checkLoopPreservesPullback(cs.f, cs.g)) return "cospan " + std::to_string(trial);
                     }
                     return std::string();
                 }});
    return e;
}

std::vector<Entry> cohomChecks() {
    std::vector<Entry> e;
    e.push_back({"grp-cohom", "bar-delta-squared", [] {
                     std::mt19937 rng(11);
                     for (const auto& g : {gpd::shareGroup(FiniteGroup::cyclic(3)), gpd::shareGroup(FiniteGroup::symmetric3())})
                         for (Coeff c : {Coeff::Z, Coeff::Q, Coeff::QmodZ})
                             for (int deg = 0; deg <= 3; ++deg)
                                 if (!cohom::coboundary(cohom::coboundary(randomBar(g, deg, c, rng))).isZero())
                                     return "degree " + std::to_string(deg);
                     return std::string();
                 }});
    e.push_back({"grp-cohom", "bockstein-injective", [] {
                     for (const auto& n : catalog::groupNames()) {
                         const auto g = gpd::shareGroup(*catalog::group(n));
                         const auto chars = cohom::characters(g);
                         const cohom::CoboundaryOracle oracle(g, 2);
                         std::set<std::vector<BigInt>> classes;
                         for (const auto& phi : chars) classes.insert(oracle.coordinates(cohom::bockstein(phi)));
                         if (classes.size() != chars.size()) return n;
                     }
                     return std::string();
                 }});
    e.push_back({"grp-cohom", "integrate-anticommutes", [] {
                     std::mt19937 rng(3);
                     std::uniform_int_distribution<int> d(-4, 4);
                     for (const auto& g : {gpd::shareGroup(FiniteGroup::cyclic(3)), gpd::shareGroup(FiniteGroup::symmetric3())})
                         for (int k = 1; k <= 3; ++k) {
                             cohom::ZxGammaCochain c(g, k, Coeff::Z);
                             for (unsigned mask = 0; mask < (1u << k); ++mask)
                                 for (std::size_t gi = 0; gi < c.gammaTuples(); ++gi) c.setCorner(mask, gi, d(rng));
                             if (!(cohom::integrate(cohom::coboundary(c)) == cohom::coboundary(cohom::integrate(c)).scaled(-1)))
                                 return "degree " + std::to_string(k);
                         }
                     return std::string();
                 }});
    e.push_back({"grp-cohom", "cyclic-cohomology", [] {
                     for (int n = 2; n <= 6; ++n) {
                         const auto h = cohom::cohomology(FiniteGroup::cyclic(n), Coeff::Z, 4);
                         if (h[1].order() != BigInt(1) || h[2].order() != BigInt(n) || h[3].order() != BigInt(1) ||
                             h[4].order() != BigInt(n))
                             return "Z/" + std::to_string(n);
                     }
                     return std::string();
                 }});
    return e;
}

std::vector<Entry> cocChecks() {
    std::vector<Entry> e;
    e.push_back({"coc", "nerve-delta-squared", [] {
                     std::mt19937 rng(1);
                     for (const auto& [n, g] : groupoids())
                         for (int deg = 0; deg <= 2; ++deg)
                             if (!coc::coboundary(coc::coboundary(randomNerve(g, deg, Coeff::QmodZ, rng, false))).isZero())
                                 return n + ": degree " + std::to_string(deg);
                     return std::string();
                 }});
    e.push_back({"coc", "transgression-of-coboundary", [] {
                     std::mt19937 rng(31);
                     for (const auto& [n, g] : groupoids()) {
                         const auto lx = loop::loopGroupoid(g);
                         const auto c = randomNerve(g, 1, Coeff::QmodZ, rng, true);
                         const auto tau = coc::transgressGerbe(coc::GerbeCocycle(coc::coboundary(c)), lx);
                         const auto cl = coc::NerveCochain::fromFunction(lx.carrier, 0, Coeff::QmodZ, [&](std::span<const int> t) {
                             return c(std::initializer_list<int>{lx.loopOf[t[0]]});
                         });
                         if (!(tau == coc::coboundary(cl))) return n;
                     }
                     return std::string();
                 }});
    e.push_back({"coc", "local-system-conjugation-invariant", [] {
                     std::mt19937 rng(5);
                     for (const auto& [n, g] : groupoids()) {
                         const auto lx = loop::loopGroupoid(g);
                         const auto beta = coc::GerbeCocycle(coc::coboundary(randomNerve(g, 1, Coeff::QmodZ, rng, true)));
                         const auto t = coc::transgressGerbe(beta, lx);
                         const auto& L = *lx.carrier;
                         for (int nu = 0; nu < L.morphismCount(); ++nu)
                             for (int a : L.automorphisms(L.src(nu))) {
                                 const int moved = L.compose(L.compose(nu, a), L.inv(nu));
                                 if (t(std::initializer_list<int>{moved}) != t(std::initializer_list<int>{a})) return n;
                             }
                     }
                     return std::string();
                 }});
    e.push_back({"coc", "commutator-on-abelian", [] {
                     const auto k = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
                     const auto bk = gpd::oneObjectGroupoid(k);
                     const coc::GerbeCocycle beta(coc::NerveCochain::fromFunction(bk, 2, Coeff::QmodZ, [](std::span<const int> t) {
                         return Rational((t[0] / 2) * (t[1] % 2), 2);
                     }));
                     const auto lx = loop::loopGroupoid(bk);
                     const auto tau = coc::transgressGerbe(beta, lx);
                     for (int f = 0; f < lx.carrier->morphismCount(); ++f) {
                         const int gamma = lx.loopOf[lx.carrier->src(f)], h = lx.muOf[f];
                         if (tau(std::initializer_list<int>{f}) != reduce(beta(h, gamma) - beta(gamma, h)))
                             return lx.carrier->morphism(f).id;
                     }
                     return std::string();
                 }});
    e.push_back({"coc", "h-equals-chi-bar", [] {
                     for (const auto& n : catalog::groupNames()) {
                         const auto g = gpd::shareGroup(*catalog::group(n));
                         const auto bg = gpd::oneObjectGroupoid(*g);
                         const auto lx = loop::loopGroupoid(bg);
                         for (const auto& phi : cohom::characters(g))
                             if (!coc::checkHEqualsChiBar(coc::NerveCochain::fromBar(phi, bg), lx).equal) return n;
                     }
                     return std::string();
                 }});
    e.push_back({"coc", "bundle-transgression-functorial", [] {
                     const auto s3 = FiniteGroup::symmetric3();
                     const auto x = gpd::actionGroupoid(samples::conjugation(s3));
                     const auto bs3 = gpd::oneObjectGroupoid(s3);
                     const auto f = samples::toGroup(x, bs3);
                     const auto lx = loop::loopGroupoid(x), ly = loop::loopGroupoid(bs3);
                     const auto lf = loop::loopOfMap(f, lx, ly);
                     for (const auto& phi : cohom::characters(gpd::shareGroup(s3))) {
                         const auto phiY = coc::NerveCochain::fromBar(phi, bs3);
                         const auto hx = coc::transgressBundle(phiY.pullback(f), lx);
                         const auto hy = coc::transgressBundle(phiY, ly);
                         for (int o = 0; o < lx.carrier->objectCount(); ++o)
                             if (hx[o] != hy[lf.obj[o]]) return lx.carrier->objectName(o);
                     }
                     return std::string();
                 }});
    e.push_back({"coc", "holonomy-theorem", [] {
                     for (int m = 1; m <= 5; ++m) {
                         const auto gamma = gpd::shareGroup(FiniteGroup::cyclic(m));
                         for (const auto& phi : cohom::characters(gamma))
                             for (int n : {m * m, 2 * m * m})
                                 if (!coc::verifyHolonomyTheorem(gamma, phi, n).verdict)
                                     return "Z/" + std::to_string(m) + ", N = " + std::to_string(n);
                     }
                     return std::string();
                 }});
    return e;
}

std::vector<Entry> delocChecks() {
    std::vector<Entry> e;
    e.push_back({"deloc", "point-gives-class-count", [] {
                     for (const char* n : {"point/Z4", "point/S3", "point/Q8"}) {
                         const auto k = *catalog::gammaComplex(n);
                         const auto t = deloc::delocalized(k).total;
                         if (t.size() != 1 || t[0] != static_cast<int>(k.group->conjugacyClasses().size())) return std::string(n);
                     }
                     return std::string();
                 }});
    e.push_back({"deloc", "gauge-invariance", [] {
                     std::mt19937 rng(8);
                     for (const char* n : {"point/Z2xZ2", "point/S3"}) {
                         const auto k = *catalog::gammaComplex(n);
                         const auto b = deloc::brylinski(k);
                         const cohom::BarCochain base(k.group, 2, Coeff::QmodZ);
                         const auto ref = deloc::delocalized(b, &base);
                         for (int t = 0; t < 3; ++t) {
                             const auto shifted = base + cohom::coboundary(randomBar(k.group, 1, Coeff::QmodZ, rng));
                             const auto r = deloc::delocalized(b, &shifted);
                             if (r.total != ref.total) return std::string(n);
                             for (std::size_t s = 0; s < r.sectors.size(); ++s)
                                 if (r.sectors[s].epsilon != ref.sectors[s].epsilon) return std::string(n) + ": epsilon";
                         }
                     }
                     return std::string();
                 }});
    e.push_back({"deloc", "orbit-complex-agreement", [] {
                     for (const char* n : {"S2/Z1", "S2/Z2-rotation", "S1/D3-dihedral", "point/Z2xZ2"}) {
                         const auto k = *catalog::gammaComplex(n);
                         if (deloc::delocalizedUntwistedRational(k) != deloc::delocalized(k).total) return std::string(n);
                     }
                     return std::string();
                 }});
    e.push_back({"deloc", "sector-sum", [] {
                     for (const char* n : {"S2/Z2-rotation", "point/Z2xZ2"}) {
                         const auto r = deloc::delocalized(*catalog::gammaComplex(n));
                         std::vector<int> sum(r.total.size(), 0);
                         for (const auto& s : r.sectors)
                             for (std::size_t i = 0; i < s.dims.size() && i < sum.size(); ++i) sum[i] += s.dims[i];
                         if (sum != r.total) return std::string(n);
                         for (const auto& s : r.sectors)
                             for (const auto& eps : s.epsilon)
                                 if (eps < 0 || eps >= 1) return std::string(n) + ": epsilon outside [0, 1)";
                     }
                     return std::string();
                 }});
    return e;
}

std::vector<Entry> zcomplexChecks() {
    std::vector<Entry> e;
    e.push_back({"zcomplex", "d-squared", [] {
                     const auto s3 = *catalog::complex("S3");
                     for (int k = 0; k <= 3; ++k) {
                         auto lam = zc::topGenerator(s3);
                         for (auto& x : lam) x *= k;
                         (void)zc::buildTwisted(s3, lam);  // throws InternalError if d^2 != 0
                     }
                     return std::string();
                 }});
    e.push_back({"zcomplex", "square-zero-rejected", [] {
                     std::mt19937 rng(3);
                     const auto s6 = simp::simplexBoundary(7);
                     for (int trial = 0; trial < 5; ++trial) {
                         const auto mu = randomVec(s6.count(2), rng);
                         const auto lam = simp::toDense(simp::coboundaryMatrix<Rational>(s6, 2).apply(simp::toSparse(mu)), s6.count(3));
                         try {
                             (void)zc::buildTwisted(s6, lam, std::nullopt, 0);
                         } catch (const PreconditionError& ex) {
                             return ex.name() == "square-zero" ? std::string() : "rejected as " + ex.name();
                         }
                     }
                     return std::string("no random exact lambda was rejected");
                 }});
    e.push_back({"zcomplex", "e2-and-stable", [] {
                     for (const auto& n : catalog::complexNames()) {
                         const auto k = *catalog::complex(n);
                         std::vector<Rational> lam(static_cast<std::size_t>(k.count(3)));
                         if (n == "S3") lam = zc::topGenerator(k);
                         const auto t = zc::buildTwisted(k, lam);
                         const int mmax = k.dimension() + 4;
                         const auto dims = zc::twistedCohomology(t, mmax);
                         if (zc::spectralE2(t, mmax) != dims) return n + ": E2";
                         if (zc::stableDims(dims, k.dimension()) != zc::periodicCohomology(k, lam)) return n + ": stable";
                     }
                     return std::string();
                 }});
    e.push_back({"zcomplex", "gauge-transform", [] {
                     std::mt19937 rng(17);
                     const auto s3 = *catalog::complex("S3");
                     for (int trial = 0; trial < 3; ++trial) {
                         const auto g = zc::checkGaugeTransform(s3, randomVec(s3.count(2), rng), 7);
                         if (!g.applicable) return "not applicable: " + g.reason;
                         if (!g.intertwines || g.twisted != g.untwisted) return std::string("dims differ");
                         if (g.periodicTwisted != g.periodicUntwisted) return std::string("periodic dims differ");
                     }
                     return std::string();
                 }});
    return e;
}

std::vector<Entry> ioChecks() {
    std::vector<Entry> e;
    e.push_back({"io", "groupoid-round-trip", [] {
                     for (const auto& [n, g] : groupoids()) {
                         const auto doc = io::writeGroupoid(*g);
                         if (io::dump(io::writeGroupoid(*io::readGroupoid(io::parse(io::dump(doc))))) != io::dump(doc)) return n;
                     }
                     return std::string();
                 }});
    return e;
}

}  // namespace

std::vector<CheckResult> runSelftest(const std::string& filter, const std::function<void(const CheckResult&)>& progress) {
    std::vector<Entry> all;
    for (auto part : {gpdChecks(), loopChecks(), cohomChecks(), cocChecks(), delocChecks(), zcomplexChecks(), ioChecks()})
        for (auto& x : part) all.push_back(std::move(x));
    std::vector<CheckResult> out;
    for (const auto& c : all) {
        if (!filter.empty() && (c.module + "/" + c.name).find(filter) == std::string::npos) continue;
        CheckResult r{c.module, c.name, false, ""};
        try {
            r.detail = c.run();
            r.passed = r.detail.empty();
        } catch (const std::exception& ex) {
            r.detail = std::string("exception: ") + ex.what();
        }
        if (progress) progress(r);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace orbiloop::cli
