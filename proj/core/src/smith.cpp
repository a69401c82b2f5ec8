#include "orbiloop/smith.hpp"

#include <algorithm>
#include <limits>

#include "orbiloop/error.hpp"

namespace orbiloop::cohom {

void SparseIntMatrix::push(int i, int j, std::int64_t v) {
    auto& row = entries[i];
    if (!row.empty() && row.back().first == j) {
        row.back().second = checkedAdd(row.back().second, v);
        if (row.back().second == 0) row.pop_back();
    } else if (v != 0) {
        row.emplace_back(j, v);
    }
}

BigMatrix SparseIntMatrix::dense() const {
    BigMatrix d(rows, std::vector<BigInt>(cols, 0));
    for (int i = 0; i < rows; ++i)
        for (const auto& [j, v] : entries[i]) d[i][j] = static_cast<long>(v);
    return d;
}

namespace {

using Row = std::vector<std::pair<int, std::int64_t>>;

std::int64_t entryOf(const Row& r, int col) {
    auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int c) { return e.first < c; });
    return (it != r.end() && it->first == col) ? it->second : 0;
}

// r := r - f * p
void axpy(Row& r, std::int64_t f, const Row& p, std::vector<std::vector<int>>& colRows, int rowIndex) {
    Row out;
    out.reserve(r.size() + p.size());
    std::size_t a = 0, b = 0;
    while (a < r.size() || b < p.size()) {
        if (b == p.size() || (a < r.size() && r[a].first < p[b].first)) {
            out.push_back(r[a++]);
        } else if (a == r.size() || p[b].first < r[a].first) {
            out.emplace_back(p[b].first, checkedMul(-f, p[b].second));
            colRows[p[b].first].push_back(rowIndex);
            ++b;
        } else {
            const std::int64_t v = checkedSub(r[a].second, checkedMul(f, p[b].second));
            if (v != 0) out.emplace_back(r[a].first, v);
            ++a;
            ++b;
        }
    }
    r.swap(out);
}

}  // namespace

Divisors elementaryDivisors(SparseIntMatrix a) {
    const int n = a.rows;
    std::vector<std::vector<int>> colRows(a.cols);
    for (int i = 0; i < n; ++i)
        for (const auto& e : a.entries[i]) colRows[e.first].push_back(i);
    std::vector<char> rowDone(n, 0), colDone(a.cols, 0);
    Divisors out;
    // Buckets by row length; rows may sit in stale buckets and are re-checked on pop.
    while (true) {
        int bestRow = -1, bestCol = -1;
        std::size_t bestCost = std::numeric_limits<std::size_t>::max();
        std::size_t bestLen = std::numeric_limits<std::size_t>::max();
        for (int i = 0; i < n; ++i) {
            if (rowDone[i] || a.entries[i].empty()) continue;
            const std::size_t len = a.entries[i].size();
            if (len > bestLen) continue;
            for (const auto& [j, v] : a.entries[i]) {
                if (v != 1 && v != -1) continue;
                const std::size_t cost = (len - 1) * (colRows[j].size());
                if (len < bestLen || cost < bestCost) {
                    bestLen = len;
                    bestCost = cost;
                    bestRow = i;
                    bestCol = j;
                }
            }
            if (bestLen == 1 && bestRow >= 0) break;
        }
        if (bestRow < 0) break;
        const Row pivot = a.entries[bestRow];
        const std::int64_t pv = entryOf(pivot, bestCol);
        std::vector<int> touched = colRows[bestCol];
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (int k : touched) {
            if (k == bestRow || rowDone[k]) continue;
            const std::int64_t v = entryOf(a.entries[k], bestCol);
            if (v == 0) continue;
            axpy(a.entries[k], v * pv, pivot, colRows, k);
        }
        rowDone[bestRow] = 1;
        colDone[bestCol] = 1;
        a.entries[bestRow].clear();
        colRows[bestCol].clear();
        ++out.rank;
        // Compact column lists from time to time.
        for (const auto& [j, v] : pivot) {
            auto& cr = colRows[j];
            if (cr.size() > 64) {
                std::sort(cr.begin(), cr.end());
                cr.erase(std::unique(cr.begin(), cr.end()), cr.end());
                cr.erase(std::remove_if(cr.begin(), cr.end(),
                                        [&](int r) { return rowDone[r] || entryOf(a.entries[r], j) == 0; }),
                         cr.end());
            }
        }
    }
    // Dense remainder.
    std::vector<int> rowsLeft, colsLeft;
    std::vector<int> colMap(a.cols, -1);
    for (int i = 0; i < n; ++i)
        if (!rowDone[i] && !a.entries[i].empty()) {
            rowsLeft.push_back(i);
            for (const auto& e : a.entries[i])
                if (colMap[e.first] < 0) {
                    colMap[e.first] = static_cast<int>(colsLeft.size());
                    colsLeft.push_back(e.first);
                }
        }
    if (rowsLeft.empty()) return out;
    if (static_cast<double>(rowsLeft.size()) * static_cast<double>(colsLeft.size()) > 4e7)
        throw InternalError("Smith remainder too large for dense elimination");
    BigMatrix rest(rowsLeft.size(), std::vector<BigInt>(colsLeft.size(), 0));
    for (std::size_t r = 0; r < rowsLeft.size(); ++r)
        for (const auto& [j, v] : a.entries[rowsLeft[r]]) rest[r][colMap[j]] = static_cast<long>(v);
    const auto sf = smith(std::move(rest), false);
    for (const auto& d : sf.diag) {
        ++out.rank;
        if (d != 1) out.nonUnit.push_back(d);
    }
    return out;
}

SmithForm smith(BigMatrix a, bool withTransform) {
    const int m = static_cast<int>(a.size());
    const int n = m == 0 ? 0 : static_cast<int>(a[0].size());
    SmithForm out;
    if (withTransform) {
        out.u.assign(m, std::vector<BigInt>(m, 0));
        for (int i = 0; i < m; ++i) out.u[i][i] = 1;
    }
    auto swapRows = [&](int i, int j) {
        std::swap(a[i], a[j]);
        if (withTransform) std::swap(out.u[i], out.u[j]);
    };
    auto addRow = [&](int dst, const BigInt& f, int src) {  // row dst += f * row src
        for (int c = 0; c < n; ++c)
            if (a[src][c] != 0) a[dst][c] += f * a[src][c];
        if (withTransform)
            for (int c = 0; c < m; ++c)
                if (out.u[src][c] != 0) out.u[dst][c] += f * out.u[src][c];
    };
    auto swapCols = [&](int i, int j) {
        for (int r = 0; r < m; ++r) std::swap(a[r][i], a[r][j]);
    };
    for (int t = 0; t < std::min(m, n); ++t) {
        while (true) {
            // Smallest nonzero in the trailing block.
            int pr = -1, pc = -1;
            for (int i = t; i < m; ++i)
                for (int j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pr < 0 || abs(a[i][j]) < abs(a[pr][pc]))) {
                        pr = i;
                        pc = j;
                    }
            if (pr < 0) {
                return out;
            }
            swapRows(t, pr);
            swapCols(t, pc);
            bool clean = true;
            for (int i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                addRow(i, -q, t);
                if (a[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                for (int r = t; r < m; ++r)
                    if (a[r][t] != 0) a[r][j] -= q * a[r][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility of the trailing block.
            int bad = -1;
            for (int i = t + 1; i < m && bad < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (a[i][j] != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad >= 0) {
                addRow(t, 1, bad);
                continue;
            }
            break;
        }
        if (a[t][t] < 0) {
            for (int c = t; c < n; ++c) a[t][c] = -a[t][c];
            if (withTransform)
                for (int c = 0; c < m; ++c) out.u[t][c] = -out.u[t][c];
        }
        out.diag.push_back(a[t][t]);
    }
    return out;
}

}  // namespace orbiloop::cohom
