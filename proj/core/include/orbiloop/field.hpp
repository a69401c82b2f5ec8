#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbiloop/error.hpp"
#include "orbiloop/scalar.hpp"

namespace orbiloop::linalg {

/// Q(zeta_N) = Q[t] / Phi_N(t), elements as coefficient vectors of length phi(N).
class CyclotomicField {
public:
    explicit CyclotomicField(int n);

    int order() const noexcept { return n_; }
    int degree() const noexcept { return static_cast<int>(phi_.size()) - 1; }
    /// Monic Phi_N, lowest coefficient first.
    const std::vector<Rational>& polynomial() const noexcept { return phi_; }
    /// Reduces an arbitrary polynomial modulo Phi_N.
    std::vector<Rational> reduce(std::vector<Rational> p) const;

private:
    int n_;
    std::vector<Rational> phi_;
};

/// N-th cyclotomic polynomial, lowest coefficient first (integer coefficients).
std::vector<Rational> cyclotomicPolynomial(int n);

/// Element of a cyclotomic field. A null field pointer marks a rational constant that is
/// promoted on contact with a field element.
class Cyclo {
public:
    Cyclo() = default;
    Cyclo(int v) : c_{Rational(v)} { trim(); }
    Cyclo(const Rational& v) : c_{v} { trim(); }
    Cyclo(std::shared_ptr<const CyclotomicField> f, std::vector<Rational> coeffs);

    /// zeta^k for the primitive N-th root t.
    static Cyclo zetaPower(std::shared_ptr<const CyclotomicField> f, long long k);
    /// exp(2 pi i v) for v in Q/Z; the denominator of v must divide N.
    static Cyclo root(std::shared_ptr<const CyclotomicField> f, const Rational& v);

    const std::shared_ptr<const CyclotomicField>& field() const noexcept { return f_; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    bool isZero() const noexcept { return c_.empty(); }
    bool isRational() const noexcept { return c_.size() <= 1; }
    Rational rationalPart() const { return c_.empty() ? Rational(0) : c_[0]; }

    Cyclo operator+(const Cyclo& o) const;
    Cyclo operator-(const Cyclo& o) const;
    Cyclo operator-() const;
    Cyclo operator*(const Cyclo& o) const;
    Cyclo operator/(const Cyclo& o) const;
    Cyclo inverse() const;
    Cyclo& operator+=(const Cyclo& o) { return *this = *this + o; }
    Cyclo& operator-=(const Cyclo& o) { return *this = *this - o; }
    Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }
    bool operator==(const Cyclo& o) const { return c_ == o.c_; }

    std::string str() const;

private:
    void trim();
    const std::shared_ptr<const CyclotomicField>& common(const Cyclo& o) const;
    std::shared_ptr<const CyclotomicField> f_;
    std::vector<Rational> c_;  // no trailing zeros
};

inline bool isZero(const Rational& v) { return sgn(v) == 0; }
inline bool isZero(const Cyclo& v) { return v.isZero(); }

template <class F>
using SparseVec = std::vector<std::pair<int, F>>;

/// Incremental fully reduced row echelon form over a field F.
///
/// Rows are added one at a time; the stored basis always has pivot entries 1 and zeros in
/// every other pivot column, so reduction of a new vector is a single pass.
template <class F>
class RowReducer {
public:
    explicit RowReducer(int cols) : cols_(cols), pivotRow_(static_cast<std::size_t>(cols), -1) {}

    int cols() const noexcept { return cols_; }
    int rank() const noexcept { return static_cast<int>(rows_.size()); }

    /// Adds a row; returns true if the rank grew.
    bool add(SparseVec<F> row) {
        row = reduced(std::move(row));
        if (row.empty()) return false;
        const int pc = row.front().first;
        const F inv = F(1) / row.front().second;
        for (auto& [c, v] : row) v = v * inv;
        for (auto& other : rows_) {
            auto it = std::lower_bound(other.begin(), other.end(), pc,
                                       [](const auto& e, int c) { return e.first < c; });
            if (it == other.end() || it->first != pc) continue;
            const F factor = it->second;
            other = axpy(other, row, factor);
        }
        pivotRow_[static_cast<std::size_t>(pc)] = rank();
        pivots_.push_back(pc);
        rows_.push_back(std::move(row));
        return true;
    }

    /// v minus its projection onto the row space along pivot columns.
    SparseVec<F> reduced(SparseVec<F> v) const {
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        SparseVec<F> out;
        std::vector<std::pair<int, F>> hits;
        for (auto& [c, x] : v) {
            if (isZero(x)) continue;
            if (!out.empty() && out.back().first == c)
                out.back().second = out.back().second + x;
            else
                out.emplace_back(c, x);
        }
        std::erase_if(out, [](const auto& e) { return isZero(e.second); });
        for (const auto& [c, x] : out)
            if (pivotRow_[static_cast<std::size_t>(c)] >= 0) hits.emplace_back(c, x);
        for (const auto& [c, x] : hits) out = axpy(out, rows_[static_cast<std::size_t>(pivotRow_[c])], x);
        return out;
    }

    bool inSpan(SparseVec<F> v) const { return reduced(std::move(v)).empty(); }

    const std::vector<int>& pivotColumns() const noexcept { return pivots_; }
    const std::vector<SparseVec<F>>& rows() const noexcept { return rows_; }
    bool isPivot(int c) const { return pivotRow_[static_cast<std::size_t>(c)] >= 0; }

    std::vector<int> freeColumns() const {
        std::vector<int> out;
        for (int c = 0; c < cols_; ++c)
            if (!isPivot(c)) out.push_back(c);
        return out;
    }

    /// Basis of the null space, one vector per free column j (entry 1 at j, 0 at other free columns).
    std::vector<SparseVec<F>> nullspace() const {
        const auto free = freeColumns();
        std::vector<int> slot(static_cast<std::size_t>(cols_), -1);
        for (std::size_t i = 0; i < free.size(); ++i) slot[static_cast<std::size_t>(free[i])] = static_cast<int>(i);
        std::vector<SparseVec<F>> out(free.size());
        for (std::size_t i = 0; i < free.size(); ++i) out[i].emplace_back(free[i], F(1));
        for (std::size_t r = 0; r < rows_.size(); ++r)
            for (const auto& [c, v] : rows_[r])
                if (slot[static_cast<std::size_t>(c)] >= 0)
                    out[static_cast<std::size_t>(slot[c])].emplace_back(pivots_[r], -v);
        for (auto& v : out)
            std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    // a - f * b, both sorted.
    static SparseVec<F> axpy(const SparseVec<F>& a, const SparseVec<F>& b, const F& f) {
        SparseVec<F> out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                out.emplace_back(b[j].first, -(f * b[j].second));
                ++j;
            } else {
                F v = a[i].second - f * b[j].second;
                if (!isZero(v)) out.emplace_back(a[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    int cols_;
    std::vector<int> pivotRow_;
    std::vector<int> pivots_;
    std::vector<SparseVec<F>> rows_;
};

/// Row-compressed matrix over F.
template <class F>
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<SparseVec<F>> data;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r)) {}

    /// y = A x for sparse x.
    SparseVec<F> apply(const SparseVec<F>& x) const {
        std::vector<F> dense(static_cast<std::size_t>(cols));
        for (const auto& [c, v] : x) dense[static_cast<std::size_t>(c)] = dense[static_cast<std::size_t>(c)] + v;
        SparseVec<F> y;
        for (int r = 0; r < rows; ++r) {
            F s(0);
            for (const auto& [c, v] : data[static_cast<std::size_t>(r)]) s = s + v * dense[static_cast<std::size_t>(c)];
            if (!linalg::isZero(s)) y.emplace_back(r, std::move(s));
        }
        return y;
    }

    SparseMatrix transpose() const {
        SparseMatrix t(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (const auto& [c, v] : data[static_cast<std::size_t>(r)]) t.data[static_cast<std::size_t>(c)].emplace_back(r, v);
        return t;
    }

    bool isZero() const {
        for (const auto& row : data)
            if (!row.empty()) return false;
        return true;
    }
};

/// A B for sparse matrices.
template <class F>
SparseMatrix<F> multiply(const SparseMatrix<F>& a, const SparseMatrix<F>& b) {
    if (a.cols != b.rows) throw PreconditionError("shape", "matrix product shape mismatch");
    SparseMatrix<F> out(a.rows, b.cols);
    std::vector<F> acc(static_cast<std::size_t>(b.cols));
    std::vector<char> touched(static_cast<std::size_t>(b.cols), 0);
    std::vector<int> list;
    for (int r = 0; r < a.rows; ++r) {
        list.clear();
        for (const auto& [k, v] : a.data[static_cast<std::size_t>(r)])
            for (const auto& [c, w] : b.data[static_cast<std::size_t>(k)]) {
                if (!touched[static_cast<std::size_t>(c)]) {
                    touched[static_cast<std::size_t>(c)] = 1;
                    acc[static_cast<std::size_t>(c)] = F(0);
                    list.push_back(c);
                }
                acc[static_cast<std::size_t>(c)] = acc[static_cast<std::size_t>(c)] + v * w;
            }
        std::sort(list.begin(), list.end());
        for (int c : list) {
            touched[static_cast<std::size_t>(c)] = 0;
            if (!linalg::isZero(acc[static_cast<std::size_t>(c)])) out.data[static_cast<std::size_t>(r)].emplace_back(c, acc[static_cast<std::size_t>(c)]);
        }
    }
    return out;
}

template <class F>
int rank(const SparseMatrix<F>& m) {
    // Reduce along the shorter side.
    if (m.rows > m.cols) return rank(m.transpose());
    RowReducer<F> r(m.cols);
    for (const auto& row : m.data) r.add(row);
    return r.rank();
}

/// Solves A x = b; returns nullopt when inconsistent.
template <class F>
std::optional<SparseVec<F>> solve(const SparseMatrix<F>& a, const SparseVec<F>& b) {
    // Row-reduce [A^T] augmented by tracking: solve via the transpose row space of [A | b].
    const auto at = a.transpose();
    RowReducer<F> r(a.rows + 1 + a.cols);
    // Each column j of A becomes a row (A_j, 0, e_j); b becomes (b, 1, 0).
    for (int j = 0; j < a.cols; ++j) {
        SparseVec<F> row = at.data[static_cast<std::size_t>(j)];
        row.emplace_back(a.rows + 1 + j, F(1));
        r.add(row);
    }
    SparseVec<F> rb = b;
    rb.emplace_back(a.rows, F(1));
    rb = r.reduced(rb);
    // Consistent iff the reduced vector has no entries among the first a.rows columns.
    for (const auto& [c, v] : rb)
        if (c < a.rows) return std::nullopt;
    // rb = b + 1*marker - sum x_j (A_j + e_j); coefficient at marker is 1 and at e_j is -x_j.
    SparseVec<F> x;
    for (const auto& [c, v] : rb)
        if (c > a.rows) x.emplace_back(c - a.rows - 1, -v);
    return x;
}

}  // namespace orbiloop::linalg

namespace orbiloop::linalg {

/// Cohomology of C^{k-1} -> C^k -> C^{k+1} with representative cocycles.
///
/// prev has n_k rows and n_{k-1} columns; next has n_{k+1} rows and n_k columns. Cocycles
/// are expressed in the kernel basis attached to the free columns of next; the image of
/// prev is reduced in those coordinates and its non-pivot positions give representatives.
template <class F>
class CochainCohomology {
public:
    CochainCohomology(const SparseMatrix<F>& prev, const SparseMatrix<F>& next, int n)
        : n_(n), kernel_(n), slot_(static_cast<std::size_t>(n), -1) {
        if (prev.rows != n || next.cols != n) throw PreconditionError("shape", "cochain complex shape mismatch");
        for (const auto& row : next.data) kernel_.add(row);
        zBasis_ = kernel_.nullspace();
        const auto free = kernel_.freeColumns();
        for (std::size_t i = 0; i < free.size(); ++i) slot_[static_cast<std::size_t>(free[i])] = static_cast<int>(i);
        auto image = std::make_shared<RowReducer<F>>(static_cast<int>(free.size()));
        const auto t = prev.transpose();
        for (const auto& col : t.data) image->add(restrict(col));
        image_ = std::move(image);
        for (int c = 0; c < image_->cols(); ++c)
            if (!image_->isPivot(c)) repPos_.push_back(c);
    }

    int dim() const noexcept { return static_cast<int>(repPos_.size()); }
    int cochainDim() const noexcept { return n_; }
    int cocycleDim() const noexcept { return static_cast<int>(zBasis_.size()); }

    /// Representative cocycle of the i-th basis class.
    const SparseVec<F>& representative(int i) const { return zBasis_[static_cast<std::size_t>(repPos_[i])]; }

    bool isCocycle(const SparseVec<F>& v) const { return kernelContains(v); }

    /// Class of a cocycle in the representative basis.
    std::vector<F> coordinates(const SparseVec<F>& cocycle) const {
        const auto r = image_->reduced(restrict(cocycle));
        std::vector<F> out(repPos_.size(), F(0));
        std::size_t j = 0;
        for (const auto& [c, v] : r) {
            while (j < repPos_.size() && repPos_[j] < c) ++j;
            if (j < repPos_.size() && repPos_[j] == c) out[j] = v;
        }
        return out;
    }

private:
    bool kernelContains(const SparseVec<F>& v) const {
        // v is a cocycle iff it equals the kernel combination given by its free coordinates.
        SparseVec<F> comb;
        for (const auto& [c, x] : v) {
            const int s = slot_[static_cast<std::size_t>(c)];
            if (s < 0) continue;
            for (const auto& [cc, y] : zBasis_[static_cast<std::size_t>(s)]) comb.emplace_back(cc, x * y);
        }
        for (const auto& [c, x] : v) comb.emplace_back(c, -x);
        RowReducer<F> zero(n_);
        return zero.reduced(std::move(comb)).empty();
    }

    SparseVec<F> restrict(const SparseVec<F>& v) const {
        SparseVec<F> out;
        for (const auto& [c, x] : v) {
            const int s = slot_[static_cast<std::size_t>(c)];
            if (s >= 0) out.emplace_back(s, x);
        }
        return out;
    }

    int n_;
    RowReducer<F> kernel_;
    std::vector<int> slot_;
    std::vector<SparseVec<F>> zBasis_;
    std::shared_ptr<const RowReducer<F>> image_;
    std::vector<int> repPos_;
};

}  // namespace orbiloop::linalg
