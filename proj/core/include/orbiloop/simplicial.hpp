#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbiloop/field.hpp"
#include "orbiloop/scalar.hpp"

namespace orbiloop::simp {

/// Finite abstract simplicial complex with ordered vertices 0..n-1.
///
/// Simplices of each dimension are kept as increasing vertex lists in lexicographic order;
/// a simplex is identified by (dimension, index).
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Downward closure of the given simplices (vertex lists in any order).
    static SimplicialComplex fromSimplices(std::vector<std::string> vertices,
                                           const std::vector<std::vector<int>>& simplices);

    int dimension() const noexcept { return static_cast<int>(byDim_.size()) - 1; }
    int vertexCount() const noexcept { return static_cast<int>(names_.size()); }
    const std::string& vertexName(int v) const { return names_[static_cast<std::size_t>(v)]; }
    const std::vector<std::string>& vertexNames() const noexcept { return names_; }
    int count(int k) const {
        return k < 0 || k > dimension() ? 0 : static_cast<int>(byDim_[static_cast<std::size_t>(k)].size());
    }
    int totalCount() const;
    const std::vector<int>& simplex(int k, int i) const { return byDim_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]; }
    const std::vector<std::vector<int>>& simplices(int k) const { return byDim_[static_cast<std::size_t>(k)]; }

    /// Index of the simplex with the given increasing vertex list.
    std::optional<int> find(std::span<const int> vertices) const;
    int indexOf(std::span<const int> vertices) const;
    /// Index of the face of simplex (k, i) obtained by deleting its j-th vertex; k >= 1.
    int face(int k, int i, int j) const {
        return faces_[static_cast<std::size_t>(k)][static_cast<std::size_t>(i) * static_cast<std::size_t>(k + 1) + static_cast<std::size_t>(j)];
    }
    std::vector<int> fVector() const;
    int eulerCharacteristic() const;

    /// Full subcomplex on the given vertices; `vertexMap` receives the old index of each new vertex.
    SimplicialComplex induced(const std::vector<int>& vertices, std::vector<int>* vertexMap = nullptr) const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<std::vector<int>>> byDim_;
    std::vector<std::map<std::vector<int>, int>> index_;
    std::vector<std::vector<int>> faces_;
};

/// Barycentric subdivision. Vertex v of the result is the barycenter of simplex origin[v]
/// = (dimension, index) of the input; vertices are ordered by dimension, so each simplex
/// of the subdivision is a chain listed by increasing dimension.
struct Subdivision {
    SimplicialComplex complex;
    std::vector<std::pair<int, int>> origin;
};

Subdivision barycentric(const SimplicialComplex& k);

/// Action of a vertex map on k-simplices: image index and orientation sign (sorting parity).
/// Returns nullopt if the image is degenerate or not a simplex.
struct SimplexImage {
    int index;
    int sign;
};
std::optional<SimplexImage> imageOf(const SimplicialComplex& k, int dim, int i, const std::vector<int>& vertexMap);

/// Rank-1 local system: a Q/Z value per edge, transport from the larger to the smaller
/// vertex is multiplication by exp(2 pi i value). Flat iff the edge values form a cocycle.
struct LocalSystem {
    std::vector<Rational> edge;
    /// Least N with every value in (1/N)Z.
    int order() const;
};

bool isFlat(const SimplicialComplex& k, const LocalSystem& l);

using linalg::isZero;

/// Dense cochain with entries in F, indexed by the k-simplices.
template <class F>
using Cochain = std::vector<F>;

/// Transport factor per edge (exp(2 pi i L(e))), or empty for constant coefficients.
template <class F>
using Transport = std::vector<F>;

/// delta_k: C^k -> C^{k+1} as a matrix with count(k+1) rows and count(k) columns.
/// (delta c)(v0..v_{k+1}) = T(v0 v1) c(v1..) + sum_{i>=1} (-1)^i c(..^v_i..).
template <class F>
linalg::SparseMatrix<F> coboundaryMatrix(const SimplicialComplex& k, int dim, const Transport<F>& transport = {}) {
    linalg::SparseMatrix<F> m(k.count(dim + 1), k.count(dim));
    if (dim < -1) return m;
    if (dim == -1) return linalg::SparseMatrix<F>(k.count(0), 0);
    for (int s = 0; s < k.count(dim + 1); ++s) {
        auto& row = m.data[static_cast<std::size_t>(s)];
        for (int j = 0; j <= dim + 1; ++j) {
            F v = (j % 2 == 0) ? F(1) : F(-1);
            if (j == 0 && !transport.empty()) {
                const auto& sv = k.simplex(dim + 1, s);
                const int e[2] = {sv[0], sv[1]};
                v = transport[static_cast<std::size_t>(k.indexOf(e))];
            }
            row.emplace_back(k.face(dim + 1, s, j), v);
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        // Merge coincident faces (cannot happen in a simplicial complex, kept for safety).
        for (std::size_t i = 1; i < row.size(); ++i)
            if (row[i].first == row[i - 1].first) throw InternalError("coboundary: repeated face");
    }
    return m;
}

/// Alexander-Whitney cup product a (degree p) with b (degree q); a has constant coefficients
/// and b may be twisted by the transport.
template <class F>
Cochain<F> cup(const SimplicialComplex& k, const Cochain<F>& a, int p, const Cochain<F>& b, int q,
               const Transport<F>& transport = {}) {
    Cochain<F> out(static_cast<std::size_t>(k.count(p + q)), F(0));
    std::vector<int> front(static_cast<std::size_t>(p + 1)), back(static_cast<std::size_t>(q + 1));
    for (int s = 0; s < k.count(p + q); ++s) {
        const auto& v = k.simplex(p + q, s);
        std::copy(v.begin(), v.begin() + p + 1, front.begin());
        std::copy(v.begin() + p, v.end(), back.begin());
        F x = a[static_cast<std::size_t>(k.indexOf(front))];
        if (isZero(x)) continue;
        x = x * b[static_cast<std::size_t>(k.indexOf(back))];
        if (!transport.empty() && p > 0) {
            const int e[2] = {v[0], v[static_cast<std::size_t>(p)]};
            x = x * transport[static_cast<std::size_t>(k.indexOf(e))];
        }
        out[static_cast<std::size_t>(s)] = x;
    }
    return out;
}

template <class F>
linalg::SparseVec<F> toSparse(const Cochain<F>& c) {
    linalg::SparseVec<F> out;
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!isZero(c[i])) out.emplace_back(static_cast<int>(i), c[i]);
    return out;
}

template <class F>
Cochain<F> toDense(const linalg::SparseVec<F>& v, int n) {
    Cochain<F> out(static_cast<std::size_t>(n), F(0));
    for (const auto& [i, x] : v) out[static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)] + x;
    return out;
}

/// Cohomology of a simplicial complex in every degree, with representatives.
template <class F>
struct SimplicialCohomology {
    std::vector<linalg::CochainCohomology<F>> degrees;
    std::vector<int> dims() const {
        std::vector<int> d;
        for (const auto& h : degrees) d.push_back(h.dim());
        return d;
    }
};

template <class F>
SimplicialCohomology<F> simplicialCohomology(const SimplicialComplex& k, const Transport<F>& transport = {}) {
    SimplicialCohomology<F> out;
    for (int d = 0; d <= k.dimension(); ++d)
        out.degrees.emplace_back(coboundaryMatrix<F>(k, d - 1, transport), coboundaryMatrix<F>(k, d, transport),
                                 k.count(d));
    return out;
}

/// Transport factors in Q(zeta_N) for a local system, N = l.order().
Transport<linalg::Cyclo> transportOf(const SimplicialComplex& k, const LocalSystem& l,
                                     const std::shared_ptr<const linalg::CyclotomicField>& field);

/// Built-in complexes.
SimplicialComplex point();
SimplicialComplex interval();
/// Boundary of the n-simplex on vertices 0..n (a triangulated (n-1)-sphere).
SimplicialComplex simplexBoundary(int n);
/// The full n-simplex.
SimplicialComplex fullSimplex(int n);
/// Moebius' 7-vertex torus.
SimplicialComplex torus7();

}  // namespace orbiloop::simp
