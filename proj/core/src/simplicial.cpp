#include "orbiloop/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <functional>
#include <set>

#include "orbiloop/error.hpp"

namespace orbiloop::simp {

SimplicialComplex SimplicialComplex::fromSimplices(std::vector<std::string> vertices,
                                                   const std::vector<std::vector<int>>& simplices) {
    SimplicialComplex k;
    const int n = static_cast<int>(vertices.size());
    k.names_ = std::move(vertices);
    std::set<std::vector<int>> all;
    for (auto s : simplices) {
        if (s.empty()) throw PreconditionError("simplex", "empty simplex");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw PreconditionError("simplex", "simplex with a repeated vertex");
        for (int v : s)
            if (v < 0 || v >= n) throw PreconditionError("simplex", "vertex index out of range");
        if (s.size() > 24) throw PreconditionError("simplex", "simplex dimension too large");
        const std::size_t m = s.size();
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> f;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (1u << i)) f.push_back(s[i]);
            all.insert(std::move(f));
        }
    }
    for (int v = 0; v < n; ++v) all.insert({v});
    for (const auto& s : all) {
        const std::size_t d = s.size() - 1;
        if (k.byDim_.size() <= d) k.byDim_.resize(d + 1);
        k.byDim_[d].push_back(s);
    }
    k.index_.resize(k.byDim_.size());
    k.faces_.resize(k.byDim_.size());
    for (std::size_t d = 0; d < k.byDim_.size(); ++d) {
        std::sort(k.byDim_[d].begin(), k.byDim_[d].end());
        for (std::size_t i = 0; i < k.byDim_[d].size(); ++i) k.index_[d].emplace(k.byDim_[d][i], static_cast<int>(i));
    }
    for (std::size_t d = 1; d < k.byDim_.size(); ++d) {
        auto& f = k.faces_[d];
        f.reserve(k.byDim_[d].size() * (d + 1));
        std::vector<int> sub(d);
        for (const auto& s : k.byDim_[d])
            for (std::size_t j = 0; j <= d; ++j) {
                std::size_t w = 0;
                for (std::size_t i = 0; i <= d; ++i)
                    if (i != j) sub[w++] = s[i];
                f.push_back(k.index_[d - 1].at(sub));
            }
    }
    return k;
}

int SimplicialComplex::totalCount() const {
    int t = 0;
    for (const auto& d : byDim_) t += static_cast<int>(d.size());
    return t;
}

std::optional<int> SimplicialComplex::find(std::span<const int> vertices) const {
    if (vertices.empty() || vertices.size() > byDim_.size()) return std::nullopt;
    const auto& idx = index_[vertices.size() - 1];
    auto it = idx.find(std::vector<int>(vertices.begin(), vertices.end()));
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

int SimplicialComplex::indexOf(std::span<const int> vertices) const {
    auto i = find(vertices);
    if (!i) throw PreconditionError("simplex", "not a simplex of the complex");
    return *i;
}

std::vector<int> SimplicialComplex::fVector() const {
    std::vector<int> f;
    for (const auto& d : byDim_) f.push_back(static_cast<int>(d.size()));
    return f;
}

int SimplicialComplex::eulerCharacteristic() const {
    int chi = 0;
    for (std::size_t d = 0; d < byDim_.size(); ++d) chi += (d % 2 ? -1 : 1) * static_cast<int>(byDim_[d].size());
    return chi;
}

SimplicialComplex SimplicialComplex::induced(const std::vector<int>& vertices, std::vector<int>* vertexMap) const {
    std::vector<int> sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> newIndex(names_.size(), -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        newIndex[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
        names.push_back(names_[static_cast<std::size_t>(sorted[i])]);
    }
    std::vector<std::vector<int>> simplices;
    for (const auto& dim : byDim_)
        for (const auto& s : dim) {
            std::vector<int> t;
            for (int v : s) {
                if (newIndex[static_cast<std::size_t>(v)] < 0) break;
                t.push_back(newIndex[static_cast<std::size_t>(v)]);
            }
            if (t.size() == s.size()) simplices.push_back(std::move(t));
        }
    if (vertexMap) *vertexMap = sorted;
    return fromSimplices(std::move(names), simplices);
}

Subdivision barycentric(const SimplicialComplex& k) {
    Subdivision out;
    std::vector<std::vector<int>> base;  // new vertex index per (dim, index)
    std::vector<std::string> names;
    for (int d = 0; d <= k.dimension(); ++d) {
        base.emplace_back();
        for (int i = 0; i < k.count(d); ++i) {
            base.back().push_back(static_cast<int>(out.origin.size()));
            out.origin.emplace_back(d, i);
            std::string name = "{";
            for (std::size_t j = 0; j < k.simplex(d, i).size(); ++j)
                name += (j ? "," : "") + k.vertexName(k.simplex(d, i)[j]);
            names.push_back(name + "}");
        }
    }
    // Maximal chains suffice: chains ending at each simplex, extended downward through faces.
    std::vector<std::vector<int>> chains;
    std::vector<int> chain;
    std::function<void(int, int)> down = [&](int d, int i) {
        chain.push_back(base[static_cast<std::size_t>(d)][static_cast<std::size_t>(i)]);
        if (d == 0) {
            chains.push_back(chain);
        } else {
            for (int j = 0; j <= d; ++j) down(d - 1, k.face(d, i, j));
        }
        chain.pop_back();
    };
    // Every simplex is a face of a maximal one; starting from every simplex covers all chains
    // including those of non-pure complexes.
    for (int d = 0; d <= k.dimension(); ++d)
        for (int i = 0; i < k.count(d); ++i) down(d, i);
    out.complex = SimplicialComplex::fromSimplices(std::move(names), chains);
    return out;
}

std::optional<SimplexImage> imageOf(const SimplicialComplex& k, int dim, int i, const std::vector<int>& vertexMap) {
    std::vector<int> img;
    for (int v : k.simplex(dim, i)) img.push_back(vertexMap[static_cast<std::size_t>(v)]);
    int sign = 1;
    for (std::size_t a = 0; a < img.size(); ++a)
        for (std::size_t b = a + 1; b < img.size(); ++b) {
            if (img[a] == img[b]) return std::nullopt;
            if (img[a] > img[b]) sign = -sign;
        }
    std::sort(img.begin(), img.end());
    auto idx = k.find(img);
    if (!idx) return std::nullopt;
    return SimplexImage{*idx, sign};
}

int LocalSystem::order() const {
    BigInt n = 1;
    for (const auto& v : edge) mpz_lcm(n.get_mpz_t(), n.get_mpz_t(), v.get_den_mpz_t());
    if (!n.fits_sint_p()) throw PreconditionError("root-order", "local system order too large");
    return static_cast<int>(n.get_si());
}

bool isFlat(const SimplicialComplex& k, const LocalSystem& l) {
    if (static_cast<int>(l.edge.size()) != k.count(1)) throw PreconditionError("local-system", "one value per edge required");
    for (int t = 0; t < k.count(2); ++t) {
        const auto& s = k.simplex(2, t);
        const int ab[2] = {s[0], s[1]}, bc[2] = {s[1], s[2]}, ac[2] = {s[0], s[2]};
        const Rational v = l.edge[static_cast<std::size_t>(k.indexOf(ab))] + l.edge[static_cast<std::size_t>(k.indexOf(bc))] -
                           l.edge[static_cast<std::size_t>(k.indexOf(ac))];
        if (v.get_den() != 1) return false;
    }
    return true;
}

Transport<linalg::Cyclo> transportOf(const SimplicialComplex& k, const LocalSystem& l,
                                     const std::shared_ptr<const linalg::CyclotomicField>& field) {
    Transport<linalg::Cyclo> t;
    for (int e = 0; e < k.count(1); ++e) t.push_back(linalg::Cyclo::root(field, l.edge[static_cast<std::size_t>(e)]));
    return t;
}

SimplicialComplex point() { return SimplicialComplex::fromSimplices({"0"}, {{0}}); }

SimplicialComplex interval() { return SimplicialComplex::fromSimplices({"0", "1"}, {{0, 1}}); }

SimplicialComplex fullSimplex(int n) {
    std::vector<std::string> names;
    std::vector<int> all;
    for (int v = 0; v <= n; ++v) {
        names.push_back(std::to_string(v));
        all.push_back(v);
    }
    return SimplicialComplex::fromSimplices(std::move(names), {all});
}

SimplicialComplex simplexBoundary(int n) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> facets;
    for (int v = 0; v <= n; ++v) names.push_back(std::to_string(v));
    for (int skip = 0; skip <= n; ++skip) {
        std::vector<int> f;
        for (int v = 0; v <= n; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(std::move(f));
    }
    return SimplicialComplex::fromSimplices(std::move(names), facets);
}

SimplicialComplex torus7() {
    std::vector<std::string> names;
    std::vector<std::vector<int>> facets;
    for (int i = 0; i < 7; ++i) {
        names.push_back(std::to_string(i));
        facets.push_back({i, (i + 1) % 7, (i + 3) % 7});
        facets.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return SimplicialComplex::fromSimplices(std::move(names), facets);
}

}  // namespace orbiloop::simp
