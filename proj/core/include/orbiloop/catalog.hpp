#pragma once

#include <optional>
#include <string>
#include <vector>

#include "orbiloop/deloc.hpp"
#include "orbiloop/group.hpp"
#include "orbiloop/groupoid.hpp"
#include "orbiloop/simplicial.hpp"

namespace orbiloop::catalog {

/// Z1..Z12, S3, D4, Q8, Z2xZ2.
std::vector<std::string> groupNames();
std::optional<gpd::FiniteGroup> group(const std::string& name);

/// point, interval, S1, S2, S3, T2.
std::vector<std::string> complexNames();
std::optional<simp::SimplicialComplex> complex(const std::string& name);

/// Group actions on complexes, e.g. "S2/Z2-rotation".
std::vector<std::string> gammaComplexNames();
std::optional<deloc::GammaComplex> gammaComplex(const std::string& name);

/// One-object groupoids "B<group>" and action groupoids such as "S3-conj", "D4-square".
std::vector<std::string> groupoidNames();
std::optional<gpd::GroupoidPtr> groupoid(const std::string& name);

}  // namespace orbiloop::catalog
