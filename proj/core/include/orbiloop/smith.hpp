#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orbiloop/scalar.hpp"

namespace orbiloop::cohom {

using BigMatrix = std::vector<std::vector<BigInt>>;

/// Row-compressed integer matrix with sorted column indices.
struct SparseIntMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<std::pair<int, std::int64_t>>> entries;

    SparseIntMatrix() = default;
    SparseIntMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r)) {}
    /// Adds v to entry (i, j); entries of a row must be pushed with nondecreasing j.
    void push(int i, int j, std::int64_t v);
    BigMatrix dense() const;
};

/// Elementary divisors d_1 | d_2 | ... | d_rank of an integer matrix.
struct Divisors {
    int rank = 0;
    std::vector<BigInt> nonUnit;  // the d_i > 1, ascending
};

/// Sparse elimination on unit pivots (Markowitz order), dense Smith form on the remainder.
Divisors elementaryDivisors(SparseIntMatrix a);

/// Dense Smith normal form U A V = D; only U is accumulated.
struct SmithForm {
    std::vector<BigInt> diag;  // nonzero diagonal, each dividing the next
    BigMatrix u;               // rows x rows, unimodular
    int rank() const { return static_cast<int>(diag.size()); }
};

SmithForm smith(BigMatrix a, bool withTransform);

}  // namespace orbiloop::cohom
