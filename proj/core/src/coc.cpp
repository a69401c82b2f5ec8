#include "orbiloop/coc.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "orbiloop/error.hpp"

namespace orbiloop::coc {

namespace {

Rational frac(const Rational& v) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    Rational r = v - Rational(q);
    r.canonicalize();
    return r;
}

}  // namespace

// --- NerveCochain ------------------------------------------------------------------------

NerveCochain::NerveCochain(GroupoidPtr g, int degree, Coeff coeff) : g_(std::move(g)), degree_(degree), coeff_(coeff) {
    if (degree < 0) throw PreconditionError("degree", "negative cochain degree");
    const auto& G = *g_;
    if (degree == 0) {
        values_.assign(G.objectCount(), 0);
        return;
    }
    tails_.assign(degree, std::vector<std::size_t>(G.objectCount(), 0));
    std::fill(tails_[0].begin(), tails_[0].end(), 1);
    for (int k = 1; k < degree; ++k)
        for (int x = 0; x < G.objectCount(); ++x)
            for (int f : G.incoming(x)) tails_[k][x] += tails_[k - 1][G.src(f)];
    inPrefix_.assign(std::max(0, degree - 1), std::vector<std::size_t>(G.morphismCount(), 0));
    for (int k = 0; k + 1 < degree; ++k)
        for (int x = 0; x < G.objectCount(); ++x) {
            std::size_t acc = 0;
            for (int f : G.incoming(x)) {
                inPrefix_[k][f] = acc;
                acc += tails_[k][G.src(f)];
            }
        }
    topPrefix_.assign(G.morphismCount() + 1, 0);
    for (int f = 0; f < G.morphismCount(); ++f) topPrefix_[f + 1] = topPrefix_[f] + tails_[degree - 1][G.src(f)];
    values_.assign(topPrefix_.back(), 0);
}

NerveCochain NerveCochain::fromFunction(GroupoidPtr g, int degree, Coeff coeff,
                                        const std::function<Rational(std::span<const int>)>& f) {
    NerveCochain c(std::move(g), degree, coeff);
    c.forEachTuple([&](std::span<const int> t, std::size_t i) { c.set(i, f(t)); });
    return c;
}

NerveCochain NerveCochain::fromBar(const BarCochain& c, GroupoidPtr base) {
    auto g = base ? std::move(base) : gpd::oneObjectGroupoid(c.group());
    if (g->objectCount() != 1 || g->morphismCount() != c.group().order())
        throw PreconditionError("same-base", "base is not a one-object groupoid of the right order");
    NerveCochain out(g, c.degree(), c.coeff());
    if (c.degree() == 0) {
        out.set(0, c.at(std::size_t{0}));
        return out;
    }
    out.forEachTuple([&](std::span<const int> t, std::size_t i) { out.set(i, c.at(t)); });
    return out;
}

std::size_t NerveCochain::index(std::span<const int> t) const {
    const auto& G = *g_;
    if (degree_ == 0) {
        if (t.size() != 1 || t[0] < 0 || t[0] >= G.objectCount())
            throw PreconditionError("composable", "degree-0 cochains are indexed by an object");
        return static_cast<std::size_t>(t[0]);
    }
    if (static_cast<int>(t.size()) != degree_) throw PreconditionError("composable", "tuple length != degree");
    std::size_t idx = topPrefix_[t[0]];
    for (int i = 1; i < degree_; ++i) {
        if (G.dst(t[i]) != G.src(t[i - 1])) throw PreconditionError("composable", "tuple is not composable");
        idx += inPrefix_[degree_ - 1 - i][t[i]];
    }
    return idx;
}

void NerveCochain::forEachTuple(const std::function<void(std::span<const int>, std::size_t)>& f) const {
    const auto& G = *g_;
    if (degree_ == 0) {
        for (int x = 0; x < G.objectCount(); ++x) {
            const int t[1] = {x};
            f(t, static_cast<std::size_t>(x));
        }
        return;
    }
    std::vector<int> t(degree_);
    std::size_t i = 0;
    auto rec = [&](auto&& self, int level) -> void {
        if (level == degree_) {
            f(t, i++);
            return;
        }
        if (level == 0) {
            for (int m = 0; m < G.morphismCount(); ++m) {
                t[0] = m;
                self(self, 1);
            }
        } else {
            for (int m : G.incoming(G.src(t[level - 1]))) {
                t[level] = m;
                self(self, level + 1);
            }
        }
    };
    rec(rec, 0);
}

void NerveCochain::set(std::size_t i, const Rational& v) {
    switch (coeff_) {
        case Coeff::Z:
            if (v.get_den() != 1) throw PreconditionError("integral", "non-integral value in a Z cochain");
            values_[i] = v;
            break;
        case Coeff::Q: values_[i] = v; break;
        case Coeff::QmodZ: values_[i] = frac(v); break;
    }
}

bool NerveCochain::isZero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

bool NerveCochain::isNormalized() const {
    if (degree_ == 0) return true;
    bool ok = true;
    forEachTuple([&](std::span<const int> t, std::size_t i) {
        if (!ok || values_[i] == 0) return;
        for (int f : t)
            if (g_->isIdentity(f)) ok = false;
    });
    return ok;
}

NerveCochain& NerveCochain::operator+=(const NerveCochain& o) {
    if (o.g_ != g_ || o.degree_ != degree_ || o.coeff_ != coeff_)
        throw PreconditionError("same-space", "adding cochains of different spaces");
    for (std::size_t i = 0; i < values_.size(); ++i) set(i, values_[i] + o.values_[i]);
    return *this;
}

NerveCochain& NerveCochain::operator-=(const NerveCochain& o) {
    if (o.g_ != g_ || o.degree_ != degree_ || o.coeff_ != coeff_)
        throw PreconditionError("same-space", "subtracting cochains of different spaces");
    for (std::size_t i = 0; i < values_.size(); ++i) set(i, values_[i] - o.values_[i]);
    return *this;
}

NerveCochain NerveCochain::lift() const {
    NerveCochain out = *this;
    out.coeff_ = Coeff::Q;
    return out;
}

NerveCochain NerveCochain::as(Coeff c) const {
    NerveCochain out = *this;
    out.coeff_ = c;
    for (std::size_t i = 0; i < values_.size(); ++i) out.set(i, values_[i]);
    return out;
}

NerveCochain NerveCochain::pullback(const GroupoidMap& f) const {
    if (f.cod != g_) throw PreconditionError("same-base", "pullback along a map with another codomain");
    return fromFunction(f.dom, degree_, coeff_, [&](std::span<const int> t) {
        std::vector<int> img(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) img[i] = degree_ == 0 ? f.obj[t[i]] : f.mor[t[i]];
        return at(img);
    });
}

NerveCochain coboundary(const NerveCochain& c) {
    const auto& G = c.groupoid();
    const int n = c.degree();
    NerveCochain out(c.groupoidPtr(), n + 1, c.coeff());
    std::vector<int> tmp(std::max(n, 1));
    out.forEachTuple([&](std::span<const int> t, std::size_t i) {
        Rational v;
        if (n == 0) {
            v = c.at(std::vector<int>{G.src(t[0])}) - c.at(std::vector<int>{G.dst(t[0])});
        } else {
            std::copy(t.begin() + 1, t.end(), tmp.begin());
            v = c.at(tmp);
            for (int k = 1; k <= n; ++k) {
                int s = 0;
                for (int j = 0; j <= n; ++j) {
                    if (j == k - 1) {
                        tmp[s++] = G.compose(t[j], t[j + 1]);
                        ++j;
                    } else {
                        tmp[s++] = t[j];
                    }
                }
                if (k % 2) v -= c.at(tmp);
                else v += c.at(tmp);
            }
            std::copy(t.begin(), t.end() - 1, tmp.begin());
            if ((n + 1) % 2) v -= c.at(tmp);
            else v += c.at(tmp);
        }
        out.set(i, v);
    });
    return out;
}

bool isCocycle(const NerveCochain& c) { return coboundary(c).isZero(); }

// --- gerbes ------------------------------------------------------------------------------

GerbeCocycle::GerbeCocycle(NerveCochain beta) : beta_(std::move(beta)) {
    if (beta_.degree() != 2 || beta_.coeff() != Coeff::QmodZ)
        throw PreconditionError("gerbe-shape", "a gerbe cocycle is a Q/Z-valued 2-cochain");
    const auto& G = beta_.groupoid();
    for (int f = 0; f < G.morphismCount(); ++f) {
        const int l = G.ident(G.dst(f)), r = G.ident(G.src(f));
        if (beta_({l, f}) != 0 || beta_({f, r}) != 0)
            throw PreconditionError("normalized", "beta is not normalized at " + G.morphism(f).id +
                                                      "; apply gaugeNormalize first");
    }
    // Common denominator table; falls back to exact rationals if it overflows.
    BigInt den = 1;
    for (std::size_t i = 0; i < beta_.size(); ++i) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), beta_.at(i).get_den_mpz_t());
    const bool fast = den.fits_slong_p() && den < (BigInt(1) << 40);
    const std::int64_t D = fast ? den.get_si() : 1;
    std::vector<std::int64_t> table;
    if (fast) {
        table.resize(beta_.size());
        for (std::size_t i = 0; i < beta_.size(); ++i)
            table[i] = Rational(beta_.at(i) * D).get_num().get_si();
    }
    auto value = [&](int g, int f) -> std::int64_t {
        const int t[2] = {g, f};
        return table[beta_.index(t)];
    };
    auto check = [&](int h, int g, int f) {
        bool ok;
        if (fast) {
            ok = (value(g, f) - value(G.compose(h, g), f) + value(h, G.compose(g, f)) - value(h, g)) % D == 0;
        } else {
            const Rational v =
                beta_({g, f}) - beta_({G.compose(h, g), f}) + beta_({h, G.compose(g, f)}) - beta_({h, g});
            ok = frac(v) == 0;
        }
        if (!ok)
            throw PreconditionError("cocycle", "cocycle identity fails at (" + G.morphism(h).id + ", " +
                                                   G.morphism(g).id + ", " + G.morphism(f).id + ")");
    };
    double triples = 0;
    for (int g = 0; g < G.morphismCount(); ++g)
        triples += static_cast<double>(G.outgoing(G.dst(g)).size()) * static_cast<double>(G.incoming(G.src(g)).size());
    if (triples <= 2e7) {
        for (int g = 0; g < G.morphismCount(); ++g)
            for (int h : G.outgoing(G.dst(g)))
                for (int f : G.incoming(G.src(g))) check(h, g, f);
    } else {
        exhaustive_ = false;
        std::mt19937_64 rng(0x5eedULL);
        std::uniform_int_distribution<int> pickG(0, G.morphismCount() - 1);
        for (int s = 0; s < 1000000; ++s) {
            const int g = pickG(rng);
            const auto& outs = G.outgoing(G.dst(g));
            const auto& ins = G.incoming(G.src(g));
            const int h = outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng)];
            const int f = ins[std::uniform_int_distribution<std::size_t>(0, ins.size() - 1)(rng)];
            check(h, g, f);
        }
    }
}

GaugeShift gaugeNormalize(const NerveCochain& beta) {
    if (beta.degree() != 2) throw PreconditionError("degree", "gauge normalization acts on 2-cochains");
    const auto& G = beta.groupoid();
    NerveCochain c(beta.groupoidPtr(), 1, beta.coeff());
    for (int x = 0; x < G.objectCount(); ++x) {
        const int e = G.ident(x);
        c.set(std::vector<int>{e}, beta({e, e}));
    }
    return {beta - coboundary(c), c};
}

Extension extensionGroupoid(const GerbeCocycle& beta, int m) {
    if (m < 1) throw PreconditionError("modulus", "modulus must be positive");
    const auto& G = *beta.base();
    beta.beta().forEachTuple([&](std::span<const int>, std::size_t i) {
        if (Rational(beta.beta().at(i) * m).get_den() != 1)
            throw PreconditionError("denominator", "beta has a value whose denominator does not divide m");
    });
    auto k = [&](const Rational& v) { return static_cast<int>(Rational(frac(v) * m).get_num().get_si()); };
    gpd::FiniteGroupoid::Builder b;
    for (int x = 0; x < G.objectCount(); ++x) b.addObject(G.objectName(x));
    for (int f = 0; f < G.morphismCount(); ++f)
        for (int z = 0; z < m; ++z)
            b.addMorphism("(" + G.morphism(f).id + "," + toString(frac(Rational(z, m))) + ")", G.src(f), G.dst(f));
    for (int x = 0; x < G.objectCount(); ++x) b.setIdentity(x, G.ident(x) * m);
    for (int f = 0; f < G.morphismCount(); ++f)
        for (int z = 0; z < m; ++z) {
            const int fi = G.inv(f);
            b.setInverse(f * m + z, fi * m + k(Rational(-z, m) - beta(fi, f)));
        }
    b.composeWith([&](int gw, int fz) {
        const int g = gw / m, f = fz / m;
        return G.compose(g, f) * m + k(Rational(gw % m + fz % m, m) + beta(g, f));
    });
    Extension e;
    e.groupoid = gpd::share(std::move(b).build());
    e.modulus = m;
    e.projection = {e.groupoid, beta.base(), std::vector<int>(G.objectCount()), std::vector<int>(G.morphismCount() * m)};
    std::iota(e.projection.obj.begin(), e.projection.obj.end(), 0);
    for (int i = 0; i < G.morphismCount() * m; ++i) e.projection.mor[i] = i / m;
    return e;
}

// --- bundles -----------------------------------------------------------------------------

LoopFunction transgressBundle(const NerveCochain& phi, const loop::LoopGroupoid& lx) {
    if (phi.degree() != 1 || phi.coeff() != Coeff::QmodZ)
        throw PreconditionError("bundle-shape", "a bundle cocycle is a Q/Z-valued 1-cochain");
    if (phi.groupoidPtr() != lx.base) throw PreconditionError("same-base", "cocycle lives on another groupoid");
    if (!isCocycle(phi)) throw PreconditionError("cocycle", "bundle cochain is not a cocycle");
    const auto& X = *lx.base;
    const auto& L = *lx.carrier;
    LoopFunction h(L.objectCount());
    for (int o = 0; o < L.objectCount(); ++o) h[o] = phi(std::initializer_list<int>{lx.loopOf[o]});
    for (int f = 0; f < L.morphismCount(); ++f)
        if (h[L.src(f)] != h[L.dst(f)]) throw InternalError("transgressed bundle is not constant on a sector");
    for (int x = 0; x < X.objectCount(); ++x) {
        const auto aut = X.automorphisms(x);
        for (int a : aut)
            for (int b : aut)
                if (frac(h[lx.objectOf[a]] + h[lx.objectOf[b]]) != h[lx.objectOf[X.compose(a, b)]])
                    throw InternalError("transgressed bundle is not a homomorphism on automorphisms");
    }
    return h;
}

Rational cyclicInverseBockstein(int m, const std::function<Rational(int, int)>& chi) {
    if (m < 1) throw PreconditionError("order", "loop of nonpositive order");
    BigInt s = 0;
    for (int j = 0; j < m; ++j) s += chi(1 % m, j).get_num();
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(m));
    Rational closed(r, m);
    closed.canonicalize();
    if (m <= 24) {
        auto g = gpd::shareGroup(FiniteGroup::cyclic(m));
        const auto c = BarCochain::fromFunction(g, 2, Coeff::Z, [&](std::span<const int> a) { return chi(a[0], a[1]); });
        const auto psi = cohom::inverseBockstein(c);
        if (psi.at(std::vector<int>{1 % m}) != closed)
            throw InternalError("inverse Bockstein disagrees with the closed form");
    }
    return closed;
}

LoopFunction chiBar(const NerveCochain& chi, const loop::LoopGroupoid& lx) {
    if (chi.degree() != 2 || chi.coeff() != Coeff::Z)
        throw PreconditionError("chi-shape", "chi is a Z-valued 2-cochain");
    if (chi.groupoidPtr() != lx.base) throw PreconditionError("same-base", "cocycle lives on another groupoid");
    if (!isCocycle(chi)) throw PreconditionError("cocycle", "chi is not a cocycle");
    const auto& X = *lx.base;
    LoopFunction out(lx.carrier->objectCount());
    for (int o = 0; o < lx.carrier->objectCount(); ++o) {
        const int gamma = lx.loopOf[o];
        std::vector<int> powers{X.ident(X.src(gamma))};
        while (true) {
            const int next = X.compose(gamma, powers.back());
            if (next == powers[0]) break;
            powers.push_back(next);
        }
        const int m = static_cast<int>(powers.size());
        out[o] = cyclicInverseBockstein(m, [&](int j, int k) { return chi({powers[j], powers[k]}); });
    }
    return out;
}

HChiReport checkHEqualsChiBar(const NerveCochain& phi, const loop::LoopGroupoid& lx) {
    HChiReport r;
    r.h = transgressBundle(phi, lx);
    const auto chi = coboundary(phi.lift()).as(Coeff::Z);
    r.chiBar = chiBar(chi, lx);
    r.equal = r.h == r.chiBar;
    return r;
}

std::map<Rational, std::vector<int>> twistedSectors(const NerveCochain& phi, const loop::LoopGroupoid& lx) {
    const auto h = transgressBundle(phi, lx);
    std::map<Rational, std::vector<int>> out;
    for (const auto& s : loop::sectors(lx)) out[h[s.representative]].push_back(s.representative);
    return out;
}

// --- transgression of gerbes -------------------------------------------------------------

NerveCochain transgressGerbe(const GerbeCocycle& beta, const loop::LoopGroupoid& lx) {
    if (beta.base() != lx.base) throw PreconditionError("same-base", "gerbe lives on another groupoid");
    const auto& X = *lx.base;
    NerveCochain tau(lx.carrier, 1, Coeff::QmodZ);
    for (int f = 0; f < lx.carrier->morphismCount(); ++f) {
        const int gamma = lx.loopOf[lx.carrier->src(f)];
        const int mu = lx.muOf[f];
        const int mui = X.inv(mu);
        tau.set(std::vector<int>{f}, beta(mu, gamma) + beta(X.compose(mu, gamma), mui) - beta(mu, mui));
    }
    if (!isCocycle(tau)) throw InternalError("transgressed gerbe is not a cocycle");
    return tau;
}

Rational transgressOnGroup(const FiniteGroup& g, const std::function<Rational(int, int)>& beta, int gamma, int mu) {
    const int mui = g.inv(mu);
    return frac(beta(mu, gamma) + beta(g.mul(mu, gamma), mui) - beta(mu, mui));
}

LocalSystemSpec innerLocalSystem(const GerbeCocycle& beta, const loop::LoopGroupoid& lx) {
    const auto tau = transgressGerbe(beta, lx);
    const auto& L = *lx.carrier;
    LocalSystemSpec spec;
    for (const auto& s : loop::sectors(lx)) {
        LocalSystemSpec::Sector sec;
        sec.loopObject = s.representative;
        sec.automorphisms = L.automorphisms(s.representative);
        for (int a : sec.automorphisms) sec.values.push_back(tau(std::initializer_list<int>{a}));
        for (std::size_t i = 0; i < sec.automorphisms.size(); ++i)
            for (std::size_t j = 0; j < sec.automorphisms.size(); ++j) {
                const int ab = L.compose(sec.automorphisms[i], sec.automorphisms[j]);
                if (frac(sec.values[i] + sec.values[j]) != tau(std::initializer_list<int>{ab}))
                    throw InternalError("inner local system is not a character on a centralizer");
            }
        spec.sectors.push_back(std::move(sec));
    }
    return spec;
}

// --- e_phi and the holonomy theorem --------------------------------------------------------

namespace {

BigInt characterOrder(const BarCochain& phi) {
    BigInt o = 1;
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const BigInt d = phi.at(i).get_den();
        mpz_lcm(o.get_mpz_t(), o.get_mpz_t(), d.get_mpz_t());
    }
    return o;
}

void requireCharacter(const GroupPtr& gamma, const BarCochain& phi) {
    if (!gamma->isAbelian()) throw PreconditionError("abelian", "e_phi needs an abelian group");
    if (phi.degree() != 1 || phi.coeff() != Coeff::QmodZ || !(phi.group() == *gamma))
        throw PreconditionError("character", "phi must be a Q/Z 1-cochain on Gamma");
    if (!cohom::isCocycle(phi)) throw PreconditionError("character", "phi is not a homomorphism");
}

}  // namespace

EPhi buildEPhi(const GroupPtr& gamma, const BarCochain& phi, int n) {
    requireCharacter(gamma, phi);
    const BigInt need = characterOrder(phi) * gamma->order();
    if (n < 1 || !mpz_divisible_p(BigInt(n).get_mpz_t(), need.get_mpz_t()))
        throw PreconditionError("divisibility", "N must be a multiple of ord(phi) * |Gamma| = " + need.get_str());
    auto group = gpd::shareGroup(FiniteGroup::product(FiniteGroup::cyclic(n), *gamma));
    const int q = gamma->order();
    auto base = gpd::oneObjectGroupoid(*group);
    auto beta = NerveCochain::fromFunction(base, 2, Coeff::QmodZ, [&](std::span<const int> t) -> Rational {
        return Rational(t[1] / q) * phi.at(std::vector<int>{t[0] % q});
    });
    return {group, n, GerbeCocycle(std::move(beta))};
}

cohom::ZxGammaCochain ePhiOnZxGamma(const BarCochain& phi) {
    return cohom::ZxGammaCochain::fromFunction(phi.groupPtr(), 2, Coeff::QmodZ,
                                               [&](std::span<const cohom::ZxElement> a) -> Rational {
                                                   return Rational(a[1].n) * phi.at(std::vector<int>{a[0].g});
                                               });
}

HolonomyReport verifyHolonomyTheorem(const GroupPtr& gamma, const BarCochain& phi, int n) {
    const auto e = buildEPhi(gamma, phi, n);
    const int q = gamma->order();
    HolonomyReport r;
    const int mu = (1 % n) * q + gamma->identity();
    for (int s = 0; s < q; ++s) {
        const Rational tau = transgressOnGroup(*e.group, [&](int a, int b) { return e.cocycle(a, b); }, s, mu);
        r.transgressed.push_back(frac(-tau));
        r.direct.push_back(phi.at(std::vector<int>{s}));
    }
    const auto d = cohom::bockstein(ePhiOnZxGamma(phi));
    const auto c = cohom::integrate(d);
    const auto lb = loop::loopGroupoid(gpd::oneObjectGroupoid(*gamma));
    const auto chi = NerveCochain::fromBar(c, lb.base);
    const auto cb = chiBar(chi, lb);
    for (int s = 0; s < q; ++s) r.integrated.push_back(cb[lb.objectOf[s]]);
    r.verdict = r.transgressed == r.direct && r.direct == r.integrated;
    return r;
}

}  // namespace orbiloop::coc
