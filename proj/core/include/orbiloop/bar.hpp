#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbiloop/group.hpp"
#include "orbiloop/scalar.hpp"
#include "orbiloop/smith.hpp"

namespace orbiloop::cohom {

using gpd::FiniteGroup;
using gpd::GroupPtr;

enum class Coeff { Z, Q, QmodZ };

std::string coeffName(Coeff c);
Coeff parseCoeff(const std::string& s);

/// A cochain of the (inhomogeneous) bar complex of a finite group with trivial coefficients.
/// Values are stored as rationals; Z values are integral, Q/Z values lie in [0, 1).
class BarCochain {
public:
    BarCochain(GroupPtr g, int degree, Coeff coeff);

    static BarCochain fromFunction(GroupPtr g, int degree, Coeff coeff,
                                   const std::function<Rational(std::span<const int>)>& f);

    const FiniteGroup& group() const { return *group_; }
    const GroupPtr& groupPtr() const { return group_; }
    int degree() const noexcept { return degree_; }
    Coeff coeff() const noexcept { return coeff_; }
    std::size_t size() const noexcept { return values_.size(); }

    std::size_t index(std::span<const int> args) const;
    void decode(std::size_t index, std::span<int> args) const;

    const Rational& at(std::size_t i) const { return values_[i]; }
    const Rational& at(std::span<const int> args) const { return values_[index(args)]; }
    const Rational& operator()(std::initializer_list<int> args) const {
        return at(std::span<const int>(args.begin(), args.size()));
    }
    /// Stores v, reducing mod 1 for Q/Z; throws PreconditionError for non-integral Z values.
    void set(std::size_t i, const Rational& v);
    void set(std::span<const int> args, const Rational& v) { set(index(args), v); }

    bool isZero() const;
    /// Vanishes whenever some argument is the identity.
    bool isNormalized() const;

    BarCochain& operator+=(const BarCochain& o);
    BarCochain& operator-=(const BarCochain& o);
    friend BarCochain operator+(BarCochain a, const BarCochain& b) { return a += b; }
    friend BarCochain operator-(BarCochain a, const BarCochain& b) { return a -= b; }
    BarCochain scaled(const Rational& k) const;
    friend bool operator==(const BarCochain& a, const BarCochain& b) {
        return a.degree_ == b.degree_ && a.coeff_ == b.coeff_ && *a.group_ == *b.group_ && a.values_ == b.values_;
    }

    /// Q/Z -> Q by the representative in [0, 1).
    BarCochain lift() const;
    /// Z or Q -> Q/Z.
    BarCochain reduce() const;
    /// Reinterpret as another coefficient ring (values must be admissible).
    BarCochain as(Coeff c) const;

    /// Pullback along a homomorphism h: H -> group().
    BarCochain pullback(const GroupPtr& h, const std::vector<int>& hom) const;

private:
    GroupPtr group_;
    int degree_;
    Coeff coeff_;
    std::vector<Rational> values_;
};

/// Bar differential (trivial action).
BarCochain coboundary(const BarCochain& c);
bool isCocycle(const BarCochain& c);

/// c - delta(b) normalized, for cocycles of degree <= 2; returns the correction b as well.
struct Normalized {
    BarCochain cocycle;
    BarCochain gauge;
};
Normalized normalizeCocycle(const BarCochain& c);

/// A finitely generated abelian group d_1 | d_2 | ... with d_i != 1; a 0 entry is a free summand
/// (Z, Q or Q/Z according to coeff).
struct FinAbPresentation {
    Coeff coeff = Coeff::Z;
    std::vector<BigInt> factors;

    int freeRank() const;
    std::vector<BigInt> torsion() const;
    std::optional<BigInt> order() const;
    std::string str() const;
    friend bool operator==(const FinAbPresentation&, const FinAbPresentation&) = default;
};

struct CohomologyOptions {
    int nmaxGuard = 5;
    double tableGuard = 5e6;  // max (|G| - 1)^(n + 1) cells of the top differential
};

/// Normalized bar differential C^n -> C^{n+1} as a sparse integer matrix.
SparseIntMatrix normalizedDifferential(const FiniteGroup& g, int n);
/// Unnormalized bar differential C^n -> C^{n+1} (rows |G|^{n+1}, cols |G|^n).
SparseIntMatrix fullDifferential(const FiniteGroup& g, int n);

/// H^n(G; coeff) for 0 <= n <= nmax.
std::vector<FinAbPresentation> cohomology(const FiniteGroup& g, Coeff coeff, int nmax, CohomologyOptions opt = {});

/// Connecting map for 0 -> Z -> Q -> Q/Z -> 0 on a Q/Z cocycle.
BarCochain bockstein(const BarCochain& c);

/// All homomorphisms G -> Q/Z as degree-1 cochains.
std::vector<BarCochain> characters(const GroupPtr& g);

/// Membership of a Z cochain in the image of delta, and coordinates of its class in C^n / B^n.
class CoboundaryOracle {
public:
    CoboundaryOracle(GroupPtr g, int degree);
    bool isCoboundary(const BarCochain& c) const;
    /// Coordinates in coker(delta_{n-1}) = (+) Z/d_i (+) Z^f; torsion entries reduced mod d_i.
    std::vector<BigInt> coordinates(const BarCochain& c) const;
    const std::vector<BigInt>& moduli() const { return moduli_; }  // d_i, or 0 for free coordinates

private:
    std::vector<BigInt> transformed(const BarCochain& c) const;
    GroupPtr group_;
    int degree_;
    SmithForm snf_;
    std::vector<BigInt> moduli_;
    std::vector<int> coordRows_;
};

/// Coboundary test for any coefficient ring (Q/Z via the injectivity of the Bockstein in
/// positive degree, Q via H^n(G; Q) = 0 for n >= 1).
bool isCoboundary(const BarCochain& c);

/// For a Z-valued 2-cocycle on G, the character psi with bockstein(psi) cohomologous to it.
/// Throws PreconditionError("bockstein-image") if none exists.
BarCochain inverseBockstein(const BarCochain& chi);

}  // namespace orbiloop::cohom
