#pragma once

#include <vector>

#include "orbiloop/groupoid.hpp"

namespace orbiloop::loop {

using gpd::GroupoidMap;
using gpd::GroupoidPtr;

/// The loop groupoid LX: objects (x, gamma) with gamma an automorphism of x; a morphism
/// ((x, gamma), mu) for every mu with src(mu) = x, landing at (dst(mu), mu gamma mu^-1).
struct LoopGroupoid {
    GroupoidPtr carrier;
    GroupoidPtr base;
    GroupoidMap proj;  // (x, gamma) -> x, ((x, gamma), mu) -> mu

    std::vector<int> loopOf;     // carrier object -> gamma (a base morphism)
    std::vector<int> objectOf;   // base morphism -> carrier object, -1 if not a loop
    std::vector<int> muOf;       // carrier morphism -> mu

    int baseObject(int loopObject) const { return base->src(loopOf[loopObject]); }
    /// The carrier morphism ((x, gamma), mu).
    int morphismAt(int loopObject, int mu) const { return firstMorphism_[loopObject] + base->outPosition(mu); }

    std::vector<int> firstMorphism_;
};

LoopGroupoid loopGroupoid(const GroupoidPtr& x);

/// One connected component of LX (a twisted sector).
struct Sector {
    int representative;   // smallest carrier object in the component
    int baseObject;
    int gamma;
    int centralizerOrder; // |Aut| of the representative in LX
    int componentSize;    // number of loop objects in the component
};

std::vector<Sector> sectors(const LoopGroupoid& lx);

/// The inertia groupoid IX = E(id, id) and its canonical comparison IX -> LX,
/// (x, y, alpha, beta) -> (x, beta^-1 alpha).
struct Inertia {
    gpd::Equalizer equalizer;
    GroupoidMap toLoop;
};

Inertia inertiaViaEqualizer(const GroupoidPtr& x, const LoopGroupoid& lx);

/// LF: (x, gamma) -> (F x, F gamma). Requires lx.base == F.dom and ly.base == F.cod.
GroupoidMap loopOfMap(const GroupoidMap& f, const LoopGroupoid& lx, const LoopGroupoid& ly);

/// Fiberwise group structure of LX over X.
struct LoopMultiplication {
    gpd::FiberProduct pairs;  // LX x_X LX (standard model)
    GroupoidMap multiply;     // (a, b, theta) -> (x, gamma_a o theta^-1 gamma_b theta)
    std::vector<int> unit;    // base object -> identity loop object
    std::vector<int> inverse; // loop object -> inverse loop object
};

LoopMultiplication loopMultiply(const LoopGroupoid& lx);

/// Checks the group-object axioms fiberwise (unit, associativity, inverses) and that
/// multiply is a groupoid map lying over X.
bool checkGroupAxioms(const LoopMultiplication& m, const LoopGroupoid& lx);

/// Recomputes LX^1 as m^-1(identities) inside P = {((x0,g0),(x1,g1),mu)} with
/// m = g1^-1 mu g0 mu^-1 and compares it to the direct construction.
bool checkCartesianDescription(const LoopGroupoid& lx);

/// L(A x_C B) vs LA x_LC LB: true iff the canonical comparison is an isomorphism.
bool checkLoopPreservesPullback(const GroupoidMap& f, const GroupoidMap& g);

}  // namespace orbiloop::loop
