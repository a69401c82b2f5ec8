#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbiloop/bar.hpp"
#include "orbiloop/group.hpp"
#include "orbiloop/simplicial.hpp"

namespace orbiloop::deloc {

using gpd::GroupPtr;

/// A finite group acting on a simplicial complex by vertex permutations.
struct GammaComplex {
    simp::SimplicialComplex complex;
    GroupPtr group;
    std::vector<std::vector<int>> action;  // action[g][v] = g.v
};

/// Throws PreconditionError("action") if the permutations do not form a simplicial action.
void validate(const GammaComplex& k);

/// One barycentric subdivision with the induced action.
GammaComplex subdivide(const GammaComplex& k);
/// Every element fixing a simplex setwise fixes it pointwise.
bool isRegular(const GammaComplex& k);
/// Double barycentric subdivision (always regular; checked).
GammaComplex regularize(const GammaComplex& k);

/// Fixed complex of one conjugacy class representative with its centralizer action.
struct BrylinskiSector {
    int representative;
    std::vector<int> centralizer;          // sorted
    simp::SimplicialComplex fixed;         // full subcomplex on the fixed vertices
    std::vector<int> vertexMap;            // fixed vertex -> vertex of the regular complex
    std::vector<std::vector<int>> action;  // per centralizer element, permutation of fixed vertices
};

struct BrylinskiComplex {
    GammaComplex regular;
    std::vector<BrylinskiSector> sectors;  // one per conjugacy class, by smallest element
};

/// Regularizes K and collects the sectors of Lambda K.
BrylinskiComplex brylinski(const GammaComplex& k);

struct SectorDims {
    int representative;
    int centralizerOrder;
    std::vector<Rational> epsilon;  // Q/Z, per centralizer element
    std::vector<int> fixedBetti;    // dim H^k(K^g)
    std::vector<int> dims;          // epsilon-twisted invariants
};

struct DelocReport {
    int cyclotomicOrder;
    std::vector<SectorDims> sectors;
    std::vector<int> total;
};

/// Delocalized cohomology with the constant gerbe datum beta (a Q/Z 2-cocycle on the group),
/// or untwisted when beta is null.
DelocReport delocalized(const BrylinskiComplex& b, const cohom::BarCochain* beta = nullptr);
DelocReport delocalized(const GammaComplex& k, const cohom::BarCochain* beta = nullptr);

/// Rational cohomology of the orbit complex Lambda K / Gamma, cross-checked against delocalized(K, 0).
std::vector<int> delocalizedUntwistedRational(const GammaComplex& k);
std::vector<int> orbitComplexCohomology(const GammaComplex& regular);

/// Validated constructor.
GammaComplex makeGammaComplex(simp::SimplicialComplex k, GroupPtr g, std::vector<std::vector<int>> action);

}  // namespace orbiloop::deloc
