#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orbiloop/group.hpp"

namespace orbiloop::gpd {

/// A morphism record. Source and target are object indices.
struct Morphism {
    std::string id;
    int src = 0;
    int dst = 0;
};

/// A finite groupoid with opaque string identifiers.
///
/// Composition follows the usual order: compose(g, f) = g o f is defined exactly when
/// dst(f) == src(g), and then src(g o f) = src(f), dst(g o f) = dst(g). The range map r of
/// a groupoid object corresponds to dst and the source map s to src.
///
/// Instances are immutable once built; the axioms (associativity, units, inverses) are
/// not assumed and can be checked with validate().
class FiniteGroupoid {
public:
    class Builder;

    int objectCount() const noexcept { return static_cast<int>(objects_.size()); }
    int morphismCount() const noexcept { return static_cast<int>(morphisms_.size()); }

    const std::string& objectName(int x) const { return objects_[x]; }
    const Morphism& morphism(int f) const { return morphisms_[f]; }
    int src(int f) const { return morphisms_[f].src; }
    int dst(int f) const { return morphisms_[f].dst; }
    int ident(int x) const { return ident_[x]; }
    int inv(int f) const { return inv_[f]; }
    bool isIdentity(int f) const { return ident_[src(f)] == f; }

    bool composable(int g, int f) const { return dst(f) == src(g); }
    /// Position of f within outgoing(src f).
    int outPosition(int f) const { return outPos_[f]; }
    /// Position of f within incoming(dst f).
    int inPosition(int f) const { return inPos_[f]; }
    /// g o f; requires composable(g, f).
    int compose(int g, int f) const {
        const int x = src(g);
        return comp_[x][static_cast<std::size_t>(outPos_[g]) * in_[x].size() + inPos_[f]];
    }

    /// Morphisms leaving / entering x.
    const std::vector<int>& outgoing(int x) const { return out_[x]; }
    const std::vector<int>& incoming(int x) const { return in_[x]; }
    /// Hom(x, y) in increasing index order.
    std::vector<int> hom(int x, int y) const;
    std::vector<int> automorphisms(int x) const { return hom(x, x); }

    std::optional<int> findObject(const std::string& name) const;
    std::optional<int> findMorphism(const std::string& name) const;

    /// Connected component label per object (components numbered by smallest object).
    std::vector<int> components() const;
    int componentCount() const;

    /// Number of composable pairs; the size of the composition table.
    std::size_t composablePairCount() const;

private:
    friend class Builder;
    std::vector<std::string> objects_;
    std::vector<Morphism> morphisms_;
    std::vector<int> ident_;
    std::vector<int> inv_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
    std::vector<int> outPos_;
    std::vector<int> inPos_;
    std::vector<std::vector<int>> comp_;
    std::unordered_map<std::string, int> objectIndex_;
    std::unordered_map<std::string, int> morphismIndex_;
};

/// Incremental construction of a FiniteGroupoid. Identifiers must be unique.
class FiniteGroupoid::Builder {
public:
    int addObject(std::string name);
    int addMorphism(std::string name, int src, int dst);
    void setIdentity(int object, int morphism);
    void setInverse(int morphism, int inverse);
    void setCompose(int g, int f, int gf);
    /// Fills every composable pair with compose(g, f).
    void composeWith(const std::function<int(int g, int f)>& compose);

    int objectCount() const noexcept { return static_cast<int>(g_.objects_.size()); }
    int morphismCount() const noexcept { return static_cast<int>(g_.morphisms_.size()); }

    /// Throws SchemaError if identities, inverses or composition entries are missing.
    FiniteGroupoid build() &&;

private:
    void index();
    FiniteGroupoid g_;
    bool indexed_ = false;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) {
    return std::make_shared<const FiniteGroupoid>(std::move(g));
}

/// Outcome of validate(): first violated axiom with witnesses.
struct ValidationReport {
    bool ok = true;
    std::string axiom;
    std::vector<std::string> witnesses;
};

ValidationReport validate(const FiniteGroupoid& g);

/// A functor between finite groupoids.
struct GroupoidMap {
    GroupoidPtr dom;
    GroupoidPtr cod;
    std::vector<int> obj;
    std::vector<int> mor;

    int operator()(int f) const { return mor[f]; }
    /// Exhaustive functoriality check; returns a description of the first violation.
    std::optional<std::string> checkFunctor() const;
    bool operator==(const GroupoidMap& o) const {
        return dom == o.dom && cod == o.cod && obj == o.obj && mor == o.mor;
    }
};

GroupoidMap identityMap(const GroupoidPtr& x);
/// after o before.
GroupoidMap composeMaps(const GroupoidMap& after, const GroupoidMap& before);
/// The unique map to the point groupoid.
GroupoidMap terminalMap(const GroupoidPtr& x, const GroupoidPtr& point);

/// A natural isomorphism source => target between maps with common domain and codomain.
struct NatIso {
    GroupoidMap source;
    GroupoidMap target;
    std::vector<int> component;  // object of the domain -> morphism of the codomain

    std::optional<std::string> checkNatural() const;
};

// --- Constructions -------------------------------------------------------------------

GroupoidPtr pointGroupoid();
/// Discrete groupoid on the given object names.
GroupoidPtr discreteGroupoid(const std::vector<std::string>& objects);
/// One-object groupoid [* / G]; the morphism ids are the group element names.
GroupoidPtr oneObjectGroupoid(const FiniteGroup& g);

/// A left action of a finite group on {0..n-1}: act[g][x] = g.x
struct GroupAction {
    FiniteGroup group;
    std::vector<std::string> points;
    std::vector<std::vector<int>> act;
};

/// Action groupoid: objects X, morphisms (x, g): x -> g.x, composition (h, g.x) o (g, x) = (hg, x).
/// Throws PreconditionError("left-action") naming the violating pair.
GroupoidPtr actionGroupoid(const GroupAction& action);

/// Standard model of the 2-fiber product A x_C B.
struct FiberProduct {
    GroupoidPtr groupoid;
    GroupoidMap projA;
    GroupoidMap projB;
    NatIso filler;  // f o projA => g o projB, component (a,b,gamma) -> gamma
    /// Object (a, b, gamma) of the standard model.
    struct ObjectData {
        int a, b, gamma;
    };
    std::vector<ObjectData> objects;
};

FiberProduct fiberProduct(const GroupoidMap& f, const GroupoidMap& g);

/// Product A x B as the standard fiber product over the point.
FiberProduct product(const GroupoidPtr& a, const GroupoidPtr& b);

/// Equalizer E(f, g): the standard fiber product of (f, g): X -> Y x Y against diag: Y -> Y x Y.
struct Equalizer {
    GroupoidPtr groupoid;
    GroupoidMap toX;
    GroupoidMap toY;
    NatIso filler;
    /// Object (x, y, alpha: f x -> y, beta: g x -> y).
    struct ObjectData {
        int x, y, alpha, beta;
    };
    std::vector<ObjectData> objects;
    /// For each morphism of E: the pair (phi: x -> x', psi: y -> y').
    std::vector<std::pair<int, int>> morphisms;
};

Equalizer equalizer(const GroupoidMap& f, const GroupoidMap& g);

struct EquivalenceReport {
    bool ok = false;
    std::string witness;
};

/// Exhaustive check that F is essentially surjective and fully faithful.
EquivalenceReport isEquivalence(const GroupoidMap& f);

/// Exhaustive check that F is an isomorphism of groupoids (bijective on objects and morphisms).
bool isIsomorphism(const GroupoidMap& f);

}  // namespace orbiloop::gpd
