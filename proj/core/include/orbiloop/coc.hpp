#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "orbiloop/bar.hpp"
#include "orbiloop/groupoid.hpp"
#include "orbiloop/loop.hpp"
#include "orbiloop/zxgamma.hpp"

namespace orbiloop::coc {

using cohom::BarCochain;
using cohom::Coeff;
using gpd::FiniteGroup;
using gpd::GroupoidMap;
using gpd::GroupoidPtr;
using gpd::GroupPtr;

/// A cochain on the nerve of a finite groupoid. An n-tuple (f_1, ..., f_n) is composable when
/// each f_i o f_{i+1} is defined; tuples are enumerated with f_1 in index order and each
/// f_{i+1} running over incoming(src f_i).
class NerveCochain {
public:
    NerveCochain(GroupoidPtr g, int degree, Coeff coeff);

    static NerveCochain fromFunction(GroupoidPtr g, int degree, Coeff coeff,
                                     const std::function<Rational(std::span<const int>)>& f);
    /// Degree-n cochain on [*/G] from a bar cochain; base, if given, must be a one-object
    /// groupoid whose morphism indices are the group elements.
    static NerveCochain fromBar(const BarCochain& c, GroupoidPtr base = nullptr);

    const gpd::FiniteGroupoid& groupoid() const { return *g_; }
    const GroupoidPtr& groupoidPtr() const { return g_; }
    int degree() const noexcept { return degree_; }
    Coeff coeff() const noexcept { return coeff_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Index of a composable tuple; throws PreconditionError("composable") otherwise.
    /// In degree 0 the "tuple" is the single object.
    std::size_t index(std::span<const int> tuple) const;
    const Rational& at(std::size_t i) const { return values_[i]; }
    const Rational& at(std::span<const int> tuple) const { return values_[index(tuple)]; }
    const Rational& operator()(std::initializer_list<int> t) const {
        return at(std::span<const int>(t.begin(), t.size()));
    }
    void set(std::size_t i, const Rational& v);
    void set(std::span<const int> tuple, const Rational& v) { set(index(tuple), v); }

    /// Visits every composable tuple in index order.
    void forEachTuple(const std::function<void(std::span<const int>, std::size_t)>& f) const;

    bool isZero() const;
    bool isNormalized() const;
    NerveCochain& operator+=(const NerveCochain& o);
    NerveCochain& operator-=(const NerveCochain& o);
    friend NerveCochain operator+(NerveCochain a, const NerveCochain& b) { return a += b; }
    friend NerveCochain operator-(NerveCochain a, const NerveCochain& b) { return a -= b; }
    friend bool operator==(const NerveCochain& a, const NerveCochain& b) {
        return a.g_ == b.g_ && a.degree_ == b.degree_ && a.coeff_ == b.coeff_ && a.values_ == b.values_;
    }
    NerveCochain lift() const;
    NerveCochain as(Coeff c) const;
    /// Pullback along a groupoid map into groupoid().
    NerveCochain pullback(const GroupoidMap& f) const;

private:
    GroupoidPtr g_;
    int degree_;
    Coeff coeff_;
    // tails_[k][x]: composable k-tuples (g_1..g_k) with dst(g_1) = x.
    std::vector<std::vector<std::size_t>> tails_;
    // inPrefix_[k][f]: sum of tails_[k][src g] over g in incoming(dst f) preceding f.
    std::vector<std::vector<std::size_t>> inPrefix_;
    // topPrefix_[f]: sum of tails_[degree-1][src g] over g < f.
    std::vector<std::size_t> topPrefix_;
    std::vector<Rational> values_;
};

/// delta on nerve cochains; delta c(f) = c(src f) - c(dst f) in degree 0.
NerveCochain coboundary(const NerveCochain& c);
bool isCocycle(const NerveCochain& c);

/// A normalized Q/Z-valued 2-cocycle on a finite groupoid.
class GerbeCocycle {
public:
    /// Validates normalization and the cocycle identity (exhaustive up to 2e7 triples, otherwise
    /// on 1e6 seeded samples).
    explicit GerbeCocycle(NerveCochain beta);
    const NerveCochain& beta() const { return beta_; }
    const GroupoidPtr& base() const { return beta_.groupoidPtr(); }
    Rational operator()(int g, int f) const { return beta_({g, f}); }
    bool exhaustivelyChecked() const { return exhaustive_; }

private:
    NerveCochain beta_;
    bool exhaustive_ = true;
};

/// beta - delta(c) with c(1_x) = beta(1_x, 1_x) and c = 0 elsewhere.
struct GaugeShift {
    NerveCochain normalized;
    NerveCochain shift;
};
GaugeShift gaugeNormalize(const NerveCochain& beta);

/// Central extension of the base by Z/m: morphisms (f, k/m).
struct Extension {
    GroupoidPtr groupoid;
    GroupoidMap projection;
    int modulus;
    int morphism(int f, int k) const { return f * modulus + k; }
};
Extension extensionGroupoid(const GerbeCocycle& beta, int m);

using LoopFunction = std::vector<Rational>;  // one Q/Z value per loop object

/// h(x, gamma) = Phi(gamma) for a Q/Z 1-cocycle Phi.
LoopFunction transgressBundle(const NerveCochain& phi, const loop::LoopGroupoid& lx);

/// chi-bar for a Z-valued 2-cocycle: per loop object, the inverse Bockstein on the cyclic
/// subgroup generated by the loop, evaluated at the loop.
LoopFunction chiBar(const NerveCochain& chi, const loop::LoopGroupoid& lx);

/// Value at the generator of the character psi of Z/m with bockstein(psi) ~ chi, for a
/// Z-valued 2-cocycle on Z/m given by chi(j, k) on powers of a generator.
Rational cyclicInverseBockstein(int m, const std::function<Rational(int, int)>& chi);

/// Compares transgressBundle(Phi) with chiBar(delta(lift Phi)).
struct HChiReport {
    bool equal = false;
    LoopFunction h;
    LoopFunction chiBar;
};
HChiReport checkHEqualsChiBar(const NerveCochain& phi, const loop::LoopGroupoid& lx);

/// Loop sectors grouped by the value of h; sectors are component representatives.
std::map<Rational, std::vector<int>> twistedSectors(const NerveCochain& phi, const loop::LoopGroupoid& lx);

/// tau beta((x, gamma), mu) = beta(mu, gamma) + beta(mu gamma, mu^-1) - beta(mu, mu^-1).
NerveCochain transgressGerbe(const GerbeCocycle& beta, const loop::LoopGroupoid& lx);

/// The same formula on a group, pointwise: tau(gamma, mu) for a 2-cochain given as a function.
Rational transgressOnGroup(const FiniteGroup& g, const std::function<Rational(int, int)>& beta, int gamma, int mu);

/// Per sector representative, the character h -> tau beta(h) of its automorphism group.
struct LocalSystemSpec {
    struct Sector {
        int loopObject;
        std::vector<int> automorphisms;  // carrier morphisms
        std::vector<Rational> values;    // Q/Z
    };
    std::vector<Sector> sectors;
};
LocalSystemSpec innerLocalSystem(const GerbeCocycle& beta, const loop::LoopGroupoid& lx);

/// e_phi((n, g), (n', g')) = n' phi(g) on Z/N x Gamma (index n |Gamma| + g).
struct EPhi {
    GroupPtr group;  // Z/N x Gamma
    int truncation;
    GerbeCocycle cocycle;
};
EPhi buildEPhi(const GroupPtr& gamma, const BarCochain& phi, int n);
/// The same cocycle on Z x Gamma.
cohom::ZxGammaCochain ePhiOnZxGamma(const BarCochain& phi);

struct HolonomyReport {
    std::vector<Rational> transgressed;  // g(sigma) = -tau((0, sigma), (1, 0))
    std::vector<Rational> direct;        // phi(sigma)
    std::vector<Rational> integrated;    // chiBar(pi_!(bockstein e_phi))(sigma)
    bool verdict = false;
};
HolonomyReport verifyHolonomyTheorem(const GroupPtr& gamma, const BarCochain& phi, int n);

}  // namespace orbiloop::coc
