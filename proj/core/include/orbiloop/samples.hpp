#pragma once

#include <random>
#include <vector>

#include "orbiloop/groupoid.hpp"

namespace orbiloop::samples {

using gpd::FiniteGroup;
using gpd::GroupAction;
using gpd::GroupoidMap;
using gpd::GroupoidPtr;
using gpd::NatIso;

/// Every functor T -> A, by backtracking over morphism images.
std::vector<GroupoidMap> allFunctors(const GroupoidPtr& t, const GroupoidPtr& a);
/// Every natural isomorphism s => t.
std::vector<NatIso> allNatIsos(const GroupoidMap& s, const GroupoidMap& t);

/// An isomorphic copy with shuffled objects and morphisms, plus the isomorphism G -> copy.
GroupoidMap relabel(const GroupoidPtr& g, std::mt19937& rng);

GroupAction leftRegular(const FiniteGroup& g);
GroupAction conjugation(const FiniteGroup& g);
GroupAction trivialAction(const FiniteGroup& g, int points);
/// y pulled back along a homomorphism g -> group of y.
GroupAction pulledBack(const FiniteGroup& g, const std::vector<int>& hom, const GroupAction& y);
/// (p, a) -> (p, hom a) between action groupoids, x the pullback of y along hom.
GroupoidMap pulledBackMap(const GroupoidPtr& x, const GroupoidPtr& y, const std::vector<int>& hom);
/// (x, g) -> g from an action groupoid to the one-object groupoid of its group.
GroupoidMap toGroup(const GroupoidPtr& action, const GroupoidPtr& bg);

/// A seeded random cospan A -> C <- B of action groupoids over small groups.
struct Cospan {
    GroupoidMap f, g;
};
Cospan randomCospan(std::mt19937& rng);

/// Test groupoids with at most 2 objects and 8 morphisms for universal-property checks.
std::vector<GroupoidPtr> smallTestGroupoids();

/// Cones (u, v, sigma) over f, g from T, and those induced by maps T -> fiberProduct(f, g);
/// the standard model is a strict 2-limit iff the two sets agree and the induced map is injective.
bool checkFiberProductUniversal(const GroupoidMap& f, const GroupoidMap& g, const GroupoidPtr& t);

}  // namespace orbiloop::samples
