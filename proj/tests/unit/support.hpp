#pragma once

#include <string>
#include <vector>

#include "orbiloop/groupoid.hpp"
#include "orbiloop/samples.hpp"

namespace testsupport {

using namespace orbiloop::gpd;
using namespace orbiloop::samples;


struct Named {
    std::string name;
    GroupoidPtr g;
};

/// Small groupoids used across the property suites.
inline std::vector<Named> groupoidCatalog() {
    std::vector<Named> c;
    c.push_back({"point", pointGroupoid()});
    c.push_back({"discrete3", discreteGroupoid({"a", "b", "c"})});
    c.push_back({"BZ3", oneObjectGroupoid(FiniteGroup::cyclic(3))});
    c.push_back({"BS3", oneObjectGroupoid(FiniteGroup::symmetric3())});
    c.push_back({"BQ8", oneObjectGroupoid(FiniteGroup::quaternion())});
    c.push_back({"Z2-swap", actionGroupoid({FiniteGroup::cyclic(2), {"a", "b"}, {{0, 1}, {1, 0}}})});
    c.push_back({"Z4-on-2", actionGroupoid({FiniteGroup::cyclic(4), {"a", "b"}, {{0, 1}, {1, 0}, {0, 1}, {1, 0}}})});
    c.push_back({"S3-conj", actionGroupoid(conjugation(FiniteGroup::symmetric3()))});
    c.push_back({"Z3-regular", actionGroupoid(leftRegular(FiniteGroup::cyclic(3)))});
    {
        // D4 on the vertices of a square.
        const auto d4 = FiniteGroup::dihedral(4);
        GroupAction a{d4, {"v0", "v1", "v2", "v3"}, {}};
        for (int g = 0; g < d4.order(); ++g) {
            const int i = g % 4, refl = g / 4;
            a.act.emplace_back();
            for (int v = 0; v < 4; ++v) a.act.back().push_back(((refl ? -v : v) + i + 8) % 4);
        }
        c.push_back({"D4-square", actionGroupoid(a)});
    }
    return c;
}

}  // namespace testsupport

