#include "orbiloop/catalog.hpp"

namespace orbiloop::catalog {

using gpd::FiniteGroup;

std::vector<std::string> groupNames() {
    std::vector<std::string> n;
    for (int i = 1; i <= 12; ++i) n.push_back("Z" + std::to_string(i));
    for (const char* s : {"S3", "D4", "Q8", "Z2xZ2"}) n.emplace_back(s);
    return n;
}

std::optional<FiniteGroup> group(const std::string& name) {
    if (name == "S3") return FiniteGroup::symmetric3();
    if (name == "D4") return FiniteGroup::dihedral(4);
    if (name == "Q8") return FiniteGroup::quaternion();
    if (name == "Z2xZ2") return FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    if (name.size() >= 2 && name[0] == 'Z' && name.find_first_not_of("0123456789", 1) == std::string::npos) {
        const int n = std::stoi(name.substr(1));
        if (n >= 1 && n <= 12) return FiniteGroup::cyclic(n);
    }
    return std::nullopt;
}

std::vector<std::string> complexNames() { return {"point", "interval", "S1", "S2", "S3", "T2"}; }

std::optional<simp::SimplicialComplex> complex(const std::string& name) {
    if (name == "point") return simp::point();
    if (name == "interval") return simp::interval();
    if (name == "S1") return simp::simplexBoundary(2);
    if (name == "S2") return simp::simplexBoundary(3);
    if (name == "S3") return simp::simplexBoundary(4);
    if (name == "T2") return simp::torus7();
    return std::nullopt;
}

namespace {

using Perm = std::vector<int>;

// Action of a group generated by the given permutations, listed per element: the group is
// given and generator images are matched to its generators.
deloc::GammaComplex fromGenerators(simp::SimplicialComplex k, const FiniteGroup& g, const std::vector<int>& gens,
                                   const std::vector<Perm>& images) {
    const int n = k.vertexCount();
    std::vector<Perm> act(static_cast<std::size_t>(g.order()));
    Perm id(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) id[static_cast<std::size_t>(v)] = v;
    act[static_cast<std::size_t>(g.identity())] = id;
    std::vector<int> frontier{g.identity()};
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int x : frontier)
            for (std::size_t i = 0; i < gens.size(); ++i) {
                const int y = g.mul(gens[i], x);
                if (!act[static_cast<std::size_t>(y)].empty()) continue;
                Perm p(static_cast<std::size_t>(n));
                for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v)] = images[i][static_cast<std::size_t>(act[static_cast<std::size_t>(x)][static_cast<std::size_t>(v)])];
                act[static_cast<std::size_t>(y)] = std::move(p);
                next.push_back(y);
            }
        frontier = std::move(next);
    }
    return deloc::makeGammaComplex(std::move(k), gpd::shareGroup(g), std::move(act));
}

deloc::GammaComplex onPoint(const FiniteGroup& g) {
    return deloc::makeGammaComplex(simp::point(), gpd::shareGroup(g), std::vector<Perm>(static_cast<std::size_t>(g.order()), Perm{0}));
}

}  // namespace

std::vector<std::string> gammaComplexNames() {
    return {"point/Z1",       "point/Z4",        "point/S3",          "point/Z2xZ2",     "point/Q8",
            "point/D4",       "interval/Z2-swap", "S1/Z3-rotation",   "S1/D3-dihedral",  "S2/Z1",
            "S2/Z2-rotation", "S2/Z3-rotation",  "S2/Z2-reflection",  "S2/Z2xZ2-rotations", "T2/Z7-translation"};
}

std::optional<deloc::GammaComplex> gammaComplex(const std::string& name) {
    const auto slash = name.find('/');
    if (slash == std::string::npos) return std::nullopt;
    const std::string base = name.substr(0, slash), act = name.substr(slash + 1);
    if (base == "point") {
        auto g = group(act);
        if (!g) return std::nullopt;
        return onPoint(*g);
    }
    const auto z2 = FiniteGroup::cyclic(2), z3 = FiniteGroup::cyclic(3);
    if (name == "interval/Z2-swap") return fromGenerators(simp::interval(), z2, {1}, {{1, 0}});
    if (name == "S1/Z3-rotation") return fromGenerators(simp::simplexBoundary(2), z3, {1}, {{1, 2, 0}});
    if (name == "S1/D3-dihedral")
        // r: v -> v + 1, s: v -> -v on the triangle.
        return fromGenerators(simp::simplexBoundary(2), FiniteGroup::dihedral(3), {1, 3}, {{1, 2, 0}, {0, 2, 1}});
    if (name == "S2/Z1") return fromGenerators(simp::simplexBoundary(3), FiniteGroup::cyclic(1), {}, {});
    // Rotation by pi about the axis through the midpoints of the edges 01 and 23.
    if (name == "S2/Z2-rotation") return fromGenerators(simp::simplexBoundary(3), z2, {1}, {{1, 0, 3, 2}});
    // Rotation by 2 pi / 3 fixing vertex 0 and the opposite face center.
    if (name == "S2/Z3-rotation") return fromGenerators(simp::simplexBoundary(3), z3, {1}, {{0, 2, 3, 1}});
    // Reflection swapping vertices 0 and 1.
    if (name == "S2/Z2-reflection") return fromGenerators(simp::simplexBoundary(3), z2, {1}, {{1, 0, 2, 3}});
    // Klein four group of half-turns of the tetrahedron; (a, b) has index 2a + b.
    if (name == "S2/Z2xZ2-rotations")
        return fromGenerators(simp::simplexBoundary(3), FiniteGroup::product(z2, z2), {2, 1}, {{1, 0, 3, 2}, {2, 3, 0, 1}});
    if (name == "T2/Z7-translation")
        return fromGenerators(simp::torus7(), FiniteGroup::cyclic(7), {1}, {{1, 2, 3, 4, 5, 6, 0}});
    return std::nullopt;
}

std::vector<std::string> groupoidNames() {
    std::vector<std::string> n{"point", "discrete3"};
    for (const auto& g : groupNames()) n.push_back("B" + g);
    for (const char* s : {"Z2-swap", "Z4-on-2", "S3-conj", "Z3-regular", "D4-square"}) n.emplace_back(s);
    return n;
}

std::optional<gpd::GroupoidPtr> groupoid(const std::string& name) {
    if (name == "point") return gpd::pointGroupoid();
    if (name == "discrete3") return gpd::discreteGroupoid({"a", "b", "c"});
    if (name.size() > 1 && name[0] == 'B') {
        if (auto g = group(name.substr(1))) return gpd::oneObjectGroupoid(*g);
        return std::nullopt;
    }
    if (name == "Z2-swap") return gpd::actionGroupoid({FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {1, 0}}});
    if (name == "Z4-on-2")
        return gpd::actionGroupoid({FiniteGroup::cyclic(4), {"a", "b"}, {{0, 1}, {1, 0}, {0, 1}, {1, 0}}});
    if (name == "S3-conj" || name == "Z3-regular") {
        const auto g = name == "S3-conj" ? FiniteGroup::symmetric3() : FiniteGroup::cyclic(3);
        gpd::GroupAction a{g, g.names(), {}};
        for (int x = 0; x < g.order(); ++x) {
            a.act.emplace_back();
            for (int y = 0; y < g.order(); ++y) a.act.back().push_back(name == "S3-conj" ? g.conj(x, y) : g.mul(x, y));
        }
        return gpd::actionGroupoid(a);
    }
    if (name == "D4-square") {
        const auto d4 = FiniteGroup::dihedral(4);
        gpd::GroupAction a{d4, {"v0", "v1", "v2", "v3"}, {}};
        for (int g = 0; g < d4.order(); ++g) {
            const int i = g % 4, refl = g / 4;
            a.act.emplace_back();
            for (int v = 0; v < 4; ++v) a.act.back().push_back(((refl ? -v : v) + i + 8) % 4);
        }
        return gpd::actionGroupoid(a);
    }
    return std::nullopt;
}

}  // namespace orbiloop::catalog
