#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "orbiloop/catalog.hpp"
#include "orbiloop/coc.hpp"
#include "orbiloop/deloc.hpp"
#include "orbiloop/error.hpp"
#include "orbiloop/loop.hpp"
#include "orbiloop/samples.hpp"
#include "orbiloop/zcomplex.hpp"

using namespace orbiloop;
using cohom::BarCochain;
using cohom::Coeff;
using gpd::FiniteGroup;
using gpd::GroupoidMap;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void fail(const std::string& why) {
        if (ok) detail = why;
        ok = false;
    }
};

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string binaryPath;

// --- oracles --------------------------------------------------------------------------

int abelianizationOracle(const FiniteGroup& g) {
    std::set<int> h{g.identity()};
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b) h.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    for (bool grew = true; grew;) {
        grew = false;
        const std::vector<int> cur(h.begin(), h.end());
        for (int a : cur)
            for (int b : cur) grew |= h.insert(g.mul(a, b)).second;
    }
    return g.order() / static_cast<int>(h.size());
}

std::vector<int> centralizerOracle(const FiniteGroup& g, int x) {
    std::vector<int> c;
    for (int h = 0; h < g.order(); ++h)
        if (g.mul(h, x) == g.mul(x, h)) c.push_back(h);
    return c;
}

int conjugacyClassOracle(const FiniteGroup& g) {
    std::set<std::set<int>> classes;
    for (int x = 0; x < g.order(); ++x) {
        std::set<int> c;
        for (int y = 0; y < g.order(); ++y) c.insert(g.conj(y, x));
        classes.insert(c);
    }
    return static_cast<int>(classes.size());
}

int denseRank(std::vector<std::vector<Rational>> m) {
    int rank = 0;
    const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int p = rank;
        while (p < rows && sgn(m[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[rank]);
        for (int r = 0; r < rows; ++r) {
            if (r == rank || sgn(m[r][c]) == 0) continue;
            const Rational f = m[r][c] / m[rank][c];
            for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<int> bettiOracle(const simp::SimplicialComplex& k) {
    // Boundary ranks from vertex lists and signs, no library coboundary matrices.
    std::vector<int> rk(static_cast<std::size_t>(k.dimension() + 2), 0);
    for (int d = 0; d < k.dimension(); ++d) {
        std::vector<std::vector<Rational>> m(static_cast<std::size_t>(k.count(d + 1)),
                                             std::vector<Rational>(static_cast<std::size_t>(k.count(d))));
        for (int s = 0; s < k.count(d + 1); ++s) {
            const auto& v = k.simplex(d + 1, s);
            for (int j = 0; j <= d + 1; ++j) {
                std::vector<int> f;
                for (int i = 0; i <= d + 1; ++i)
                    if (i != j) f.push_back(v[static_cast<std::size_t>(i)]);
                m[static_cast<std::size_t>(s)][static_cast<std::size_t>(k.indexOf(f))] = j % 2 ? -1 : 1;
            }
        }
        rk[static_cast<std::size_t>(d)] = denseRank(m);
    }
    std::vector<int> b;
    for (int d = 0; d <= k.dimension(); ++d)
        b.push_back(k.count(d) - rk[static_cast<std::size_t>(d)] - (d > 0 ? rk[static_cast<std::size_t>(d - 1)] : 0));
    return b;
}

std::vector<Rational> randomVec(int n, std::mt19937& rng, int spread = 3) {
    std::uniform_int_distribution<int> d(-spread, spread);
    std::vector<Rational> c(static_cast<std::size_t>(n));
    for (auto& x : c) x = d(rng);
    return c;
}

std::vector<Rational> exactLambda(const simp::SimplicialComplex& k, std::mt19937& rng) {
    if (k.dimension() < 3) return std::vector<Rational>(static_cast<std::size_t>(k.count(3)));
    const auto mu = randomVec(k.count(2), rng);
    return simp::toDense(simp::coboundaryMatrix<Rational>(k, 2).apply(simp::toSparse(mu)), k.count(3));
}

// --- criteria ---------------------------------------------------------------------------

Outcome loopModel() {
    Outcome o;
    std::vector<std::pair<std::string, FiniteGroup>> gs;
    for (int n = 1; n <= 8; ++n) gs.emplace_back("Z" + std::to_string(n), FiniteGroup::cyclic(n));
    gs.emplace_back("S3", FiniteGroup::symmetric3());
    gs.emplace_back("D4", FiniteGroup::dihedral(4));
    gs.emplace_back("Q8", FiniteGroup::quaternion());
    for (const auto& [name, g] : gs) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto lx = loop::loopGroupoid(gpd::oneObjectGroupoid(g));
        const auto conj = gpd::actionGroupoid(samples::conjugation(g));
        GroupoidMap iso{lx.carrier, conj, {}, {}};
        for (int x = 0; x < lx.carrier->objectCount(); ++x) iso.obj.push_back(lx.loopOf[x]);
        for (int f = 0; f < lx.carrier->morphismCount(); ++f)
            iso.mor.push_back(lx.loopOf[lx.carrier->src(f)] * g.order() + lx.muOf[f]);
        if (auto w = iso.checkFunctor()) o.fail(name + ": comparison is not a functor: " + *w);
        if (!gpd::isIsomorphism(iso)) o.fail(name + ": comparison is not an isomorphism");
        const auto secs = loop::sectors(lx);
        if (static_cast<int>(secs.size()) != conjugacyClassOracle(g)) o.fail(name + ": sector count");
        for (int x = 0; x < lx.carrier->objectCount(); ++x) {
            std::vector<int> aut;
            for (int f : lx.carrier->automorphisms(x)) aut.push_back(lx.muOf[f]);
            std::sort(aut.begin(), aut.end());
            if (aut != centralizerOracle(g, lx.loopOf[x])) o.fail(name + ": automorphisms of " + lx.carrier->objectName(x));
        }
        if (seconds(t0) >= 1.0) o.fail(name + ": took longer than 1 s");
    }
    if (o.ok) o.detail = std::to_string(gs.size()) + " groups";
    return o;
}

Outcome inertia() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::string> names{"point", "discrete3", "Z2-swap", "Z4-on-2", "S3-conj", "Z3-regular", "D4-square"};
    for (const char* g : {"Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "S3", "D4", "Q8", "Z2xZ2", "Z12"})
        names.push_back(std::string("B") + g);
    for (const auto& n : names) {
        const auto x = *catalog::groupoid(n);
        const auto lx = loop::loopGroupoid(x);
        const auto r = gpd::isEquivalence(loop::inertiaViaEqualizer(x, lx).toLoop);
        if (!r.ok) o.fail(n + ": " + r.witness);
    }
    if (seconds(t0) >= 10.0) o.fail("took longer than 10 s");
    if (o.ok) o.detail = std::to_string(names.size()) + " groupoids";
    return o;
}

Outcome pullbacks() {
    Outcome o;
    std::mt19937 rng(20240601);
    for (int t = 0; t < 50; ++t) {
        const auto cs = samples::randomCospan(rng);
        if (!loop::checkLoopPreservesPullback(cs.f, cs.g)) o.fail("instance " + std::to_string(t));
    }
    if (o.ok) o.detail = "50 seeded cospans";
    return o;
}

Outcome hChiBar() {
    Outcome o;
    std::vector<FiniteGroup> gs;
    for (int n = 1; n <= 8; ++n) gs.push_back(FiniteGroup::cyclic(n));
    gs.push_back(FiniteGroup::symmetric3());
    int count = 0;
    for (const auto& g : gs) {
        const auto gp = gpd::shareGroup(g);
        const auto bg = gpd::oneObjectGroupoid(g);
        const auto lx = loop::loopGroupoid(bg);
        const auto chars = cohom::characters(gp);
        if (static_cast<int>(chars.size()) != abelianizationOracle(g)) o.fail("character count of order " + std::to_string(g.order()));
        for (const auto& phi : chars) {
            ++count;
            if (!coc::checkHEqualsChiBar(coc::NerveCochain::fromBar(phi, bg), lx).equal)
                o.fail("group of order " + std::to_string(g.order()));
        }
    }
    if (o.ok) o.detail = std::to_string(count) + " classes";
    return o;
}

Outcome holonomy() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    int count = 0;
    for (int m = 2; m <= 6; ++m) {
        const auto gamma = gpd::shareGroup(FiniteGroup::cyclic(m));
        for (int k = 0; k < m; ++k) {
            const auto phi = BarCochain::fromFunction(gamma, 1, Coeff::QmodZ, [&](std::span<const int> a) {
                return Rational(a[0] * k % m, m);
            });
            Rational gen = phi.at(std::vector<int>{1});
            gen.canonicalize();
            const int ord = static_cast<int>(gen.get_den().get_si());
            const int n = 4 * m * ord;
            const auto r = coc::verifyHolonomyTheorem(gamma, phi, n);
            ++count;
            for (int s = 0; s < m; ++s) {
                Rational expect(s * k % m, m);
                expect.canonicalize();
                if (r.direct[s] != expect || r.transgressed[s] != expect || r.integrated[s] != expect)
                    o.fail("m = " + std::to_string(m) + ", phi(1) = " + toString(gen) + " at sigma = " + std::to_string(s));
            }
            if (!r.verdict) o.fail("verdict false for m = " + std::to_string(m));
        }
    }
    if (seconds(t0) >= 30.0) o.fail("took longer than 30 s");
    if (o.ok) o.detail = std::to_string(count) + " characters";
    return o;
}

Outcome groupCohomology() {
    Outcome o;
    for (int n = 1; n <= 8; ++n) {
        const auto h = cohom::cohomology(FiniteGroup::cyclic(n), Coeff::Z, 4);
        for (int d = 0; d <= 4; ++d) {
            const int free = d == 0 ? 1 : 0;
            std::vector<BigInt> tors;
            if (d > 0 && d % 2 == 0 && n > 1) tors.push_back(n);
            if (h[d].freeRank() != free || h[d].torsion() != tors)
                o.fail("H^" + std::to_string(d) + "(Z/" + std::to_string(n) + ") = " + h[d].str());
        }
    }
    for (const auto& name : catalog::groupNames()) {
        const auto g = *catalog::group(name);
        const auto h1 = cohom::cohomology(g, Coeff::QmodZ, 1)[1];
        if (h1.order() != BigInt(abelianizationOracle(g))) o.fail("|H^1(" + name + "; Q/Z)| = " + h1.str());
        const auto gp = gpd::shareGroup(g);
        if (!g.isCyclic()) continue;
        const cohom::CoboundaryOracle oracle(gp, 2);
        std::set<std::vector<BigInt>> classes;
        for (const auto& phi : cohom::characters(gp)) classes.insert(oracle.coordinates(cohom::bockstein(phi)));
        const auto h2 = cohom::cohomology(g, Coeff::Z, 2)[2];
        if (BigInt(classes.size()) != h2.order().value_or(0) || classes.size() != static_cast<std::size_t>(g.order()))
            o.fail("Bockstein not bijective on " + name);
    }
    return o;
}

Outcome delocalized() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* n : {"point/Z4", "point/S3", "point/Q8", "point/Z2xZ2"}) {
        const auto k = *catalog::gammaComplex(n);
        const auto t = deloc::delocalized(k).total;
        if (t != std::vector<int>{conjugacyClassOracle(*k.group)}) o.fail(std::string("(a) ") + n);
    }
    {
        const auto k = *catalog::gammaComplex("point/Z2xZ2");
        const auto& g = *k.group;
        const auto beta = BarCochain::fromFunction(k.group, 2, Coeff::QmodZ, [](std::span<const int> t) {
            return Rational((t[0] / 2) * (t[1] % 2), 2);
        });
        // Projector onto invariants of each sector: (1/|C|) sum_h exp(2 pi i (beta(h,g) - beta(g,h))).
        double oracle = 0;
        for (int x = 0; x < g.order(); ++x) {
            std::complex<double> s = 0;
            const auto c = centralizerOracle(g, x);
            for (int h : c) {
                const Rational e = beta({h, x}) - beta({x, h});
                s += std::polar(1.0, 2 * std::numbers::pi * e.get_d());
            }
            oracle += s.real() / static_cast<double>(c.size());
        }
        const auto t = deloc::delocalized(k, &beta).total;
        if (t != std::vector<int>{1} || std::lround(oracle) != 1) o.fail("(b) total " + std::to_string(t.empty() ? -1 : t[0]));
    }
    if (deloc::delocalized(*catalog::gammaComplex("S2/Z2-rotation")).total != std::vector<int>{3, 0, 1}) o.fail("(c)");
    for (const auto& n : catalog::gammaComplexNames()) {
        const auto k = *catalog::gammaComplex(n);
        if (deloc::delocalized(k).total != deloc::delocalizedUntwistedRational(k)) o.fail("(d) " + n);
    }
    if (seconds(t0) >= 60.0) o.fail("took longer than 60 s");
    if (o.ok) o.detail = std::to_string(catalog::gammaComplexNames().size()) + " catalog complexes";
    return o;
}

bool squareZero(const zc::TwistedComplex& t) {
    for (int m = 0; m + 2 <= t.mMax(); ++m) {
        const auto d0 = t.differential(m), d1 = t.differential(m + 1);
        for (int i = 0; i < t.sliceDim(m); ++i) {
            const auto v = d1.apply(d0.apply(linalg::SparseVec<linalg::Cyclo>{{i, linalg::Cyclo(Rational(1))}}));
            for (const auto& [j, x] : v)
                if (!x.isZero()) return false;
        }
    }
    return true;
}

Outcome twistedComplex() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937 rng(99);
    std::vector<std::pair<std::string, simp::SimplicialComplex>> ks;
    for (const auto& n : catalog::complexNames()) ks.emplace_back(n, *catalog::complex(n));
    ks.emplace_back("boundary of 5-simplex", simp::simplexBoundary(5));
    for (const auto& [n, k] : ks) {
        const auto zero = zc::buildTwisted(k, std::vector<Rational>(static_cast<std::size_t>(k.count(3))));
        if (!squareZero(zero)) o.fail(n + ": d^2 != 0 at lambda = 0");
        if (zc::twistedCohomology(zero, zero.mMax()) != zc::shiftedBetti(bettiOracle(k), zero.mMax()))
            o.fail(n + ": lambda = 0 dims");
        const auto t = zc::buildTwisted(k, exactLambda(k, rng));
        if (!squareZero(t)) o.fail(n + ": d^2 != 0 at exact lambda");
    }
    const auto s3 = *catalog::complex("S3");
    const auto gen = zc::topGenerator(s3);
    const auto untwisted = zc::periodicCohomology(s3, std::vector<Rational>(gen.size()));
    for (int mult = 1; mult <= 3; ++mult) {
        auto lam = gen;
        for (auto& x : lam) x *= mult;
        const auto t = zc::buildTwisted(s3, lam);
        if (!squareZero(t)) o.fail("S3: d^2 != 0 at k = " + std::to_string(mult));
        const auto periodic = zc::periodicCohomology(s3, lam);
        if (zc::stableDims(zc::twistedCohomology(t, t.mMax()), 3) != periodic) o.fail("S3: stable != periodic");
        if (!(periodic.first < untwisted.first && periodic.second < untwisted.second)) o.fail("S3: not below untwisted");
    }
    int applicable = 0;
    auto gauge = [&](const simp::SimplicialComplex& k, const std::vector<Rational>& mu, int mmax, const std::vector<Rational>& l0) {
        const auto g = zc::checkGaugeTransform(k, mu, mmax, l0);
        if (!g.applicable) return;
        ++applicable;
        if (!g.intertwines || g.twisted != g.untwisted || g.periodicTwisted != g.periodicUntwisted) o.fail("gauge transform");
    };
    for (int trial = 0; trial < 4; ++trial) gauge(s3, randomVec(s3.count(2), rng), 7, trial % 2 ? gen : std::vector<Rational>{});
    const auto b5 = simp::simplexBoundary(5);
    for (int s = 0; s < b5.count(2); s += 4) {
        std::vector<Rational> mu(static_cast<std::size_t>(b5.count(2)));
        mu[static_cast<std::size_t>(s)] = 1;
        gauge(b5, mu, 6, {});
    }
    if (applicable == 0) o.fail("no gauge instance satisfied the preconditions");
    if (seconds(t0) >= 60.0) o.fail("took longer than 60 s");
    if (o.ok) o.detail = std::to_string(applicable) + " gauge instances";
    return o;
}

Outcome duality() {
    Outcome o;
    std::mt19937 rng(2025);
    struct Case {
        simp::SimplicialComplex k;
        std::vector<Rational> lambda;
    };
    std::vector<Case> cases;
    const auto s3 = *catalog::complex("S3");
    auto lam = zc::topGenerator(s3);
    for (auto& x : lam) x *= 3;
    cases.push_back({s3, lam});
    cases.push_back({*catalog::complex("T2"), {}});
    cases.push_back({*catalog::complex("S2"), {}});
    const auto s5 = simp::simplexBoundary(6);
    cases.push_back({s5, exactLambda(s5, rng)});
    for (int trial = 0; trial < 50; ++trial) {
        const auto& c = cases[static_cast<std::size_t>(trial) % cases.size()];
        const int top = c.k.dimension();
        const auto orient = *zc::fundamentalCycle(c.k);
        std::uniform_int_distribution<int> deg(-4, top - 1);
        const int tw = deg(rng);
        zc::Element omega, alpha;
        for (int n = 0; n <= 3; ++n) {
            const int p = tw + 2 * n;
            if (p >= 0 && p <= top) omega.push_back({n, p, randomVec(c.k.count(p), rng)});
        }
        const int ta = top - tw - 1;
        for (int m = 0; m <= 4; ++m) {
            const int q = ta - 2 * m;
            if (q >= 0 && q <= top) alpha.push_back({m, q, randomVec(c.k.count(q), rng)});
        }
        const auto lhs = zc::dualityPairing(c.k, orient, zc::dPrimeLambda(c.k, c.lambda, omega), alpha);
        const auto rhs = zc::dualityPairing(c.k, orient, omega, zc::dLambda(c.k, c.lambda, alpha));
        const int sign = (tw + 1) % 2 == 0 ? 1 : -1;
        if (lhs != rhs * sign) o.fail("pair " + std::to_string(trial) + ": " + toString(lhs) + " vs " + toString(rhs * sign));
    }
    if (o.ok) o.detail = "50 seeded pairs";
    return o;
}

std::string runInProcess(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return out.str();
}

std::string runBinary(const std::string& cmd, int& code) {
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        code = -1;
        return out;
    }
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    code = pclose(p);
    return out;
}

Outcome determinism() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / ("orbiloop-acceptance-" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const auto phi = write("phi.json",
                           R"j({"schema":"cochain.v1","group":"Z6","degree":1,"coeff":"QmodZ","entries":[)j"
                           R"j({"args":["1"],"value":"1/6"},{"args":["2"],"value":"1/3"},{"args":["3"],"value":"1/2"},)j"
                           R"j({"args":["4"],"value":"2/3"},{"args":["5"],"value":"5/6"}]})j");
    const auto beta = write("beta.json",
                            R"j({"schema":"cochain.v1","group":"Z2xZ2","degree":2,"coeff":"QmodZ","entries":[)j"
                            R"j({"args":["(1,0)","(0,1)"],"value":"1/2"},{"args":["(1,0)","(1,1)"],"value":"1/2"},)j"
                            R"j({"args":["(1,1)","(0,1)"],"value":"1/2"},{"args":["(1,1)","(1,1)"],"value":"1/2"}]})j");
    const std::vector<std::vector<std::string>> runs{
        {"loop", "--builtin", "S3-conj"},
        {"inertia-check", "--builtin", "D4-square"},
        {"gcohom", "--builtin", "Q8", "--nmax", "4"},
        {"gcohom", "--builtin", "Z2xZ2", "--coeff", "QmodZ", "--nmax", "3"},
        {"transgress", "--bundle", phi},
        {"transgress", "--gerbe", beta},
        {"holonomy-theorem", "--gamma", "4", "--phi", "1", "--N", "16"},
        {"deloc", "--builtin", "S2/Z2-rotation"},
        {"deloc", "--builtin", "point/Z2xZ2", "--beta", beta},
        {"zcohom", "--builtin", "S3", "--generator", "2", "--periodic", "--e2"},
        {"selftest", "--filter", "loop/"},
    };
    int verbs = 0;
    for (const auto& args : runs) {
        std::string line;
        for (const auto& a : args) line += a + " ";
        int c1 = 0, c2 = 0;
        const auto a = runInProcess(args, c1), b = runInProcess(args, c2);
        if (c1 != 0 || c2 != 0) o.fail(line + "exited with " + std::to_string(c1));
        if (a.empty() || a != b) o.fail(line + "differs between runs");
        if (!binaryPath.empty()) {
            std::string cmd = binaryPath;
            for (const auto& x : args) cmd += " '" + x + "'";
            cmd += " 2>/dev/null";
            int e1 = 0, e2 = 0;
            const auto x = runBinary(cmd, e1), y = runBinary(cmd, e2);
            if (x != y || x != a) o.fail(line + "differs between processes");
        }
        ++verbs;
    }
    std::filesystem::remove_all(dir);
    if (o.ok) o.detail = std::to_string(verbs) + " invocations" + (binaryPath.empty() ? "" : ", in process and as subprocesses");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc > 1) binaryPath = argv[1];
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"loop model L[*/G] = [G/G]", loopModel},
        {"inertia equivalent to loops", inertia},
        {"loops preserve fiber products", pullbacks},
        {"h equals chi-bar", hChiBar},
        {"holonomy theorem", holonomy},
        {"group cohomology", groupCohomology},
        {"delocalized cohomology", delocalized},
        {"twisted complex", twistedComplex},
        {"duality pairing adjunction", duality},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r.fail(std::string("exception: ") + e.what());
        }
        char time[32];
        std::snprintf(time, sizeof time, "%.2f s", seconds(t0));
        std::cout << (r.ok ? "PASS" : "FAIL") << " criterion " << (i + 1) << ": " << criteria[i].first << " ("
                  << (r.detail.empty() ? "" : r.detail + ", ") << time << ")" << std::endl;
        failed += !r.ok;
    }
    return failed == 0 ? 0 : 1;
}
