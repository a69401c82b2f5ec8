#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "orbiloop/bar.hpp"
#include "orbiloop/coc.hpp"
#include "orbiloop/deloc.hpp"
#include "orbiloop/simplicial.hpp"

namespace orbiloop::io {

using json = nlohmann::json;

/// Parses a document; syntax errors become SchemaError at the root pointer.
json parse(const std::string& text);
json readFile(const std::string& path);
/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const json& doc);

std::string pointer(const std::string& base, const std::string& key);
std::string pointer(const std::string& base, std::size_t index);

/// "p/q" or an integer (as JSON number or string).
Rational parseRational(const json& j, const std::string& ptr);
std::string formatRational(const Rational& r);

// group.v1: {schema, elements: [name], table: [[name]]}
gpd::FiniteGroup readGroup(const json& j, const std::string& ptr = "");
json writeGroup(const gpd::FiniteGroup& g);
/// A builtin group name or an inline group.v1 document.
gpd::GroupPtr readGroupRef(const json& j, const std::string& ptr);

// groupoid.v1: {schema, objects, morphisms: [{id, src, dst}], compose: [[g, f, gf]], ident, inv}
gpd::GroupoidPtr readGroupoid(const json& j, const std::string& ptr = "");
json writeGroupoid(const gpd::FiniteGroupoid& g);
gpd::GroupoidPtr readGroupoidRef(const json& j, const std::string& ptr);

// cochain.v1: {schema, group | groupoid, degree, coeff, entries: [{args, value}]}
struct CochainDoc {
    std::optional<cohom::BarCochain> bar;     // when the document names a group
    std::optional<coc::NerveCochain> nerve;   // when it names a groupoid
};
CochainDoc readCochain(const json& j, const std::string& ptr = "");
json writeCochain(const coc::NerveCochain& c, const json& groupoidRef);
json writeCochain(const cohom::BarCochain& c, const json& groupRef);

// scomplex.v1: {schema, vertices, simplices}
simp::SimplicialComplex readComplex(const json& j, const std::string& ptr = "");
json writeComplex(const simp::SimplicialComplex& k);

// gcomplex.v1: scomplex.v1 fields plus group ref and action: {element: [vertex]}
deloc::GammaComplex readGammaComplex(const json& j, const std::string& ptr = "");
json writeGammaComplex(const deloc::GammaComplex& k);

// cochain3.v1: {schema, degree: 3, entries: [{simplex, value}], localSystem?: [{simplex, value}]}
// Values on a vertex list in non-increasing order are read with the sign of the sorting permutation.
struct Cochain3Doc {
    std::vector<Rational> lambda;
    std::optional<simp::LocalSystem> localSystem;
};
Cochain3Doc readCochain3(const json& j, const simp::SimplicialComplex& k, const std::string& ptr = "");
json writeCochain3(const simp::SimplicialComplex& k, const std::vector<Rational>& lambda,
                   const std::optional<simp::LocalSystem>& localSystem = std::nullopt);

// loop-meta.v1
json writeLoopMeta(const loop::LoopGroupoid& lx);

}  // namespace orbiloop::io
