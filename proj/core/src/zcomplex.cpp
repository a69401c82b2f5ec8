#include "orbiloop/zcomplex.hpp"

#include <algorithm>

#include "orbiloop/error.hpp"
#include "orbiloop/parallel.hpp"

namespace orbiloop::zc {

using linalg::SparseMatrix;
using linalg::SparseVec;

namespace {

std::vector<Cyclo> lift(const std::vector<Rational>& v) {
    std::vector<Cyclo> out;
    out.reserve(v.size());
    for (const auto& x : v) out.emplace_back(x);
    return out;
}

std::vector<Rational> rationalCup(const SimplicialComplex& k, const std::vector<Rational>& a, int p,
                                  const std::vector<Rational>& b, int q) {
    if (p + q > k.dimension()) return {};
    return simp::cup<Rational>(k, a, p, b, q);
}

bool allZero(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::vector<Rational> coboundaryOf(const SimplicialComplex& k, const std::vector<Rational>& c, int p) {
    if (p + 1 > k.dimension()) return {};
    return simp::toDense(simp::coboundaryMatrix<Rational>(k, p).apply(simp::toSparse(c)), k.count(p + 1));
}

// Matrix of x -> lambda cup x from C^p to C^(p+3).
SparseMatrix<Cyclo> cupMatrix(const TwistedComplex& t, const std::vector<Cyclo>& lam, int from, int p) {
    const auto& k = t.base;
    const int q = from;
    SparseMatrix<Cyclo> m(k.count(q + p), k.count(p));
    std::vector<int> front(static_cast<std::size_t>(q + 1)), back(static_cast<std::size_t>(p + 1));
    for (int s = 0; s < k.count(q + p); ++s) {
        const auto& v = k.simplex(q + p, s);
        std::copy(v.begin(), v.begin() + q + 1, front.begin());
        std::copy(v.begin() + q, v.end(), back.begin());
        Cyclo x = lam[static_cast<std::size_t>(k.indexOf(front))];
        if (x.isZero()) continue;
        if (!t.transport.empty() && q > 0) {
            const int e[2] = {v[0], v[static_cast<std::size_t>(q)]};
            x = x * t.transport[static_cast<std::size_t>(k.indexOf(e))];
        }
        m.data[static_cast<std::size_t>(s)].emplace_back(k.indexOf(back), x);
    }
    return m;
}

std::vector<int> offsets(const TwistedComplex& t, const std::vector<std::pair<int, int>>& blocks) {
    std::vector<int> off;
    int o = 0;
    for (const auto& [j, p] : blocks) {
        off.push_back(o);
        o += t.base.count(p);
    }
    off.push_back(o);
    return off;
}

}  // namespace

std::vector<std::pair<int, int>> TwistedComplex::blocks(int m) const {
    std::vector<std::pair<int, int>> b;
    for (int j = 0; 2 * j <= m; ++j) {
        const int p = m - 2 * j;
        if (p <= base.dimension()) b.emplace_back(j, p);
    }
    return b;
}

int TwistedComplex::sliceDim(int m) const {
    int d = 0;
    for (const auto& [j, p] : blocks(m)) d += base.count(p);
    return d;
}

SparseMatrix<Cyclo> TwistedComplex::differential(int m) const {
    const auto src = blocks(m), dst = blocks(m + 1);
    const auto so = offsets(*this, src), doff = offsets(*this, dst);
    SparseMatrix<Cyclo> d(doff.back(), so.back());
    const auto lam = lift(lambda);
    auto place = [&](const SparseMatrix<Cyclo>& block, int rowOff, int colOff, const Cyclo& scale) {
        for (int r = 0; r < block.rows; ++r)
            for (const auto& [c, v] : block.data[static_cast<std::size_t>(r)])
                d.data[static_cast<std::size_t>(rowOff + r)].emplace_back(colOff + c, v * scale);
    };
    for (std::size_t b = 0; b < src.size(); ++b) {
        const auto [j, p] = src[b];
        for (std::size_t a = 0; a < dst.size(); ++a) {
            const auto [j2, p2] = dst[a];
            if (j2 == j && p2 == p + 1)
                place(simp::coboundaryMatrix<Cyclo>(base, p, transport), doff[a], so[b], Cyclo(1));
            if (j >= 1 && j2 == j - 1 && p2 == p + 3) place(cupMatrix(*this, lam, 3, p), doff[a], so[b], Cyclo(j));
        }
    }
    for (auto& row : d.data)
        std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return d;
}

TwistedComplex buildTwisted(const SimplicialComplex& k, std::vector<Rational> lambda,
                            std::optional<simp::LocalSystem> localSystem, int zCap) {
    if (static_cast<int>(lambda.size()) != k.count(3))
        throw PreconditionError("lambda-shape", "lambda needs one value per 3-simplex");
    if (!allZero(coboundaryOf(k, lambda, 3))) throw PreconditionError("closed", "delta lambda != 0");
    if (k.dimension() >= 6) {
        const auto sq = rationalCup(k, lambda, 3, lambda, 3);
        for (std::size_t s = 0; s < sq.size(); ++s)
            if (sgn(sq[s]) != 0) {
                std::string where;
                for (int v : k.simplex(6, static_cast<int>(s))) where += (where.empty() ? "" : ",") + k.vertexName(v);
                throw PreconditionError("square-zero", "lambda cup lambda = " + toString(sq[s]) + " on [" + where + "]");
            }
    }
    TwistedComplex t{k, std::move(lambda), std::move(localSystem), nullptr, {}, zCap};
    if (t.localSystem) {
        if (!simp::isFlat(k, *t.localSystem)) throw PreconditionError("flat", "local system is not flat");
        t.field = std::make_shared<const linalg::CyclotomicField>(t.localSystem->order());
        t.transport = simp::transportOf(k, *t.localSystem, t.field);
    }
    for (int m = 0; m + 1 <= t.mMax(); ++m)
        if (!linalg::multiply(t.differential(m + 1), t.differential(m)).isZero())
            throw InternalError("d_lambda^2 != 0 in total degree " + std::to_string(m));
    return t;
}

std::vector<int> twistedCohomology(const TwistedComplex& t, int mMax) {
    std::vector<int> ranks(static_cast<std::size_t>(mMax + 1));
    parallelFor(mMax + 1, [&](int m) { ranks[static_cast<std::size_t>(m)] = linalg::rank(t.differential(m)); });
    std::vector<int> dims;
    for (int m = 0; m <= mMax; ++m)
        dims.push_back(t.sliceDim(m) - ranks[static_cast<std::size_t>(m)] - (m > 0 ? ranks[static_cast<std::size_t>(m - 1)] : 0));
    return dims;
}

std::pair<int, int> periodicCohomology(const SimplicialComplex& k, const std::vector<Rational>& lambda,
                                       const std::optional<simp::LocalSystem>& localSystem) {
    const auto t = buildTwisted(k, lambda, localSystem, 0);
    const auto lam = lift(t.lambda);
    const int top = k.dimension();
    // Parity blocks: all form degrees of the given parity.
    auto assemble = [&](int parity) {
        std::vector<int> off(static_cast<std::size_t>(top + 2), 0);
        for (int p = 0; p <= top; ++p) off[static_cast<std::size_t>(p + 1)] = off[static_cast<std::size_t>(p)] + k.count(p);
        int srcDim = 0, dstDim = 0;
        std::vector<int> srcOff(static_cast<std::size_t>(top + 1), -1), dstOff(static_cast<std::size_t>(top + 1), -1);
        for (int p = 0; p <= top; ++p) {
            if (p % 2 == parity) {
                srcOff[static_cast<std::size_t>(p)] = srcDim;
                srcDim += k.count(p);
            } else {
                dstOff[static_cast<std::size_t>(p)] = dstDim;
                dstDim += k.count(p);
            }
        }
        SparseMatrix<Cyclo> d(dstDim, srcDim);
        auto place = [&](const SparseMatrix<Cyclo>& block, int rowOff, int colOff) {
            for (int r = 0; r < block.rows; ++r)
                for (const auto& [c, v] : block.data[static_cast<std::size_t>(r)])
                    d.data[static_cast<std::size_t>(rowOff + r)].emplace_back(colOff + c, v);
        };
        for (int p = parity; p <= top; p += 2) {
            if (p + 1 <= top) place(simp::coboundaryMatrix<Cyclo>(k, p, t.transport), dstOff[static_cast<std::size_t>(p + 1)], srcOff[static_cast<std::size_t>(p)]);
            if (p + 3 <= top) place(cupMatrix(t, lam, 3, p), dstOff[static_cast<std::size_t>(p + 3)], srcOff[static_cast<std::size_t>(p)]);
        }
        for (auto& row : d.data)
            std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return d;
    };
    const auto dEven = assemble(0), dOdd = assemble(1);
    if (!linalg::multiply(dOdd, dEven).isZero() || !linalg::multiply(dEven, dOdd).isZero())
        throw InternalError("periodic differential does not square to zero");
    const int rEven = linalg::rank(dEven), rOdd = linalg::rank(dOdd);
    return {dEven.cols - rEven - rOdd, dOdd.cols - rOdd - rEven};
}

std::vector<int> spectralE2(const TwistedComplex& t, int mMax) {
    const auto& k = t.base;
    const auto h = simp::simplicialCohomology<Cyclo>(k, t.transport);
    const auto lam = lift(t.lambda);
    auto e1 = [&](int m) {
        std::vector<std::pair<int, int>> b;
        for (const auto& [j, p] : t.blocks(m))
            if (h.degrees[static_cast<std::size_t>(p)].dim() > 0) b.emplace_back(j, p);
        return b;
    };
    auto dim1 = [&](int m) {
        int d = 0;
        for (const auto& [j, p] : e1(m)) d += h.degrees[static_cast<std::size_t>(p)].dim();
        return d;
    };
    auto d1 = [&](int m) {
        const auto src = e1(m), dst = e1(m + 1);
        std::vector<int> so{0}, doff{0};
        for (const auto& [j, p] : src) so.push_back(so.back() + h.degrees[static_cast<std::size_t>(p)].dim());
        for (const auto& [j, p] : dst) doff.push_back(doff.back() + h.degrees[static_cast<std::size_t>(p)].dim());
        SparseMatrix<Cyclo> d(doff.back(), so.back());
        for (std::size_t b = 0; b < src.size(); ++b) {
            const auto [j, p] = src[b];
            if (j == 0) continue;
            const auto it = std::find(dst.begin(), dst.end(), std::make_pair(j - 1, p + 3));
            if (it == dst.end()) continue;
            const std::size_t a = static_cast<std::size_t>(it - dst.begin());
            const auto cm = cupMatrix(t, lam, 3, p);
            const auto& hp = h.degrees[static_cast<std::size_t>(p)];
            for (int i = 0; i < hp.dim(); ++i) {
                const auto img = cm.apply(hp.representative(i));
                const auto coords = h.degrees[static_cast<std::size_t>(p + 3)].coordinates(img);
                for (std::size_t r = 0; r < coords.size(); ++r)
                    if (!coords[r].isZero())
                        d.data[static_cast<std::size_t>(doff[a]) + r].emplace_back(so[b] + i, coords[r] * Cyclo(j));
            }
        }
        for (auto& row : d.data)
            std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return d;
    };
    std::vector<int> ranks;
    for (int m = 0; m <= mMax; ++m) ranks.push_back(linalg::rank(d1(m)));
    std::vector<int> dims;
    for (int m = 0; m <= mMax; ++m)
        dims.push_back(dim1(m) - ranks[static_cast<std::size_t>(m)] - (m > 0 ? ranks[static_cast<std::size_t>(m - 1)] : 0));
    return dims;
}

std::pair<int, int> stableDims(const std::vector<int>& dims, int dimK) {
    const int m = dimK + 2;
    if (static_cast<int>(dims.size()) < m + 2) throw PreconditionError("mmax", "need dims up to degree dim K + 3");
    const int even = m % 2 == 0 ? m : m + 1, odd = m % 2 == 1 ? m : m + 1;
    return {dims[static_cast<std::size_t>(even)], dims[static_cast<std::size_t>(odd)]};
}

std::vector<int> shiftedBetti(const std::vector<int>& betti, int mMax) {
    std::vector<int> out;
    for (int m = 0; m <= mMax; ++m) {
        int s = 0;
        for (int p = m; p >= 0; p -= 2)
            if (p < static_cast<int>(betti.size())) s += betti[static_cast<std::size_t>(p)];
        out.push_back(s);
    }
    return out;
}

GaugeCheck checkGaugeTransform(const SimplicialComplex& k, const std::vector<Rational>& mu, int mMax,
                               const std::vector<Rational>& lambda0) {
    GaugeCheck out;
    if (static_cast<int>(mu.size()) != k.count(2)) throw PreconditionError("mu-shape", "mu needs one value per 2-simplex");
    std::vector<Rational> base = lambda0.empty() ? std::vector<Rational>(static_cast<std::size_t>(k.count(3))) : lambda0;
    auto dmu = coboundaryOf(k, mu, 2);
    if (dmu.empty()) dmu.assign(static_cast<std::size_t>(k.count(3)), Rational(0));
    std::vector<Rational> lambda = base;
    for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] += dmu[i];
    if (!allZero(rationalCup(k, mu, 2, mu, 2))) {
        out.reason = "mu cup mu != 0";
        return out;
    }
    if (rationalCup(k, dmu, 3, mu, 2) != rationalCup(k, mu, 2, dmu, 3)) {
        out.reason = "lambda cup mu != mu cup lambda";
        return out;
    }
    if (!lambda0.empty() && (rationalCup(k, base, 3, mu, 2) != rationalCup(k, mu, 2, base, 3))) {
        out.reason = "lambda0 cup mu != mu cup lambda0";
        return out;
    }
    TwistedComplex t0, t1;
    try {
        t0 = buildTwisted(k, base, std::nullopt, 0);
        t1 = buildTwisted(k, lambda, std::nullopt, 0);
    } catch (const PreconditionError& e) {
        out.reason = e.name();
        return out;
    }
    t0.zCap = t1.zCap = (mMax + 1) / 2 + 1;
    out.applicable = true;
    // mu^k as cochains of degree 2k.
    std::vector<std::vector<Rational>> powers{std::vector<Rational>{Rational(1)}};
    powers[0].assign(static_cast<std::size_t>(k.count(0)), Rational(1));
    while (2 * static_cast<int>(powers.size()) <= k.dimension()) {
        auto next = rationalCup(k, powers.back(), 2 * static_cast<int>(powers.size() - 1), mu, 2);
        if (allZero(next)) break;
        powers.push_back(std::move(next));
    }
    auto gauge = [&](int m) {
        const auto blocks = t0.blocks(m);
        const auto off = offsets(t0, blocks);
        SparseMatrix<Cyclo> g(off.back(), off.back());
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto [j, p] = blocks[b];
            for (std::size_t kk = 0; kk < powers.size() && static_cast<int>(kk) <= j; ++kk) {
                const int p2 = p + 2 * static_cast<int>(kk);
                const auto it = std::find(blocks.begin(), blocks.end(), std::make_pair(j - static_cast<int>(kk), p2));
                if (it == blocks.end()) continue;
                const std::size_t a = static_cast<std::size_t>(it - blocks.begin());
                // (-1)^k binom(j, k) mu^k cup.
                BigInt binom;
                mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(j), kk);
                const Rational coef = Rational(kk % 2 ? -binom : binom);
                for (int s = 0; s < k.count(p2); ++s) {
                    const auto& v = k.simplex(p2, s);
                    const std::vector<int> front(v.begin(), v.begin() + 2 * static_cast<int>(kk) + 1), back(v.begin() + 2 * static_cast<int>(kk), v.end());
                    const Rational x = powers[kk][static_cast<std::size_t>(k.indexOf(front))] * coef;
                    if (sgn(x) != 0) g.data[static_cast<std::size_t>(off[a] + s)].emplace_back(off[b] + k.indexOf(back), Cyclo(x));
                }
            }
        }
        for (auto& row : g.data)
            std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        return g;
    };
    out.intertwines = true;
    for (int m = 0; m <= mMax; ++m) {
        const auto lhs = linalg::multiply(t1.differential(m), gauge(m));
        const auto rhs = linalg::multiply(gauge(m + 1), t0.differential(m));
        SparseMatrix<Cyclo> diff(lhs.rows, lhs.cols);
        for (int r = 0; r < lhs.rows; ++r) {
            linalg::RowReducer<Cyclo> canon(lhs.cols);
            SparseVec<Cyclo> row = lhs.data[static_cast<std::size_t>(r)];
            for (const auto& [c, v] : rhs.data[static_cast<std::size_t>(r)]) row.emplace_back(c, -v);
            if (!canon.reduced(row).empty()) out.intertwines = false;
        }
    }
    out.twisted = twistedCohomology(t1, mMax);
    out.untwisted = twistedCohomology(t0, mMax);
    out.periodicTwisted = periodicCohomology(k, lambda);
    out.periodicUntwisted = periodicCohomology(k, base);
    return out;
}

std::optional<std::vector<Rational>> fundamentalCycle(const SimplicialComplex& k) {
    const int top = k.dimension();
    if (top < 0) return std::nullopt;
    if (top == 0) return k.count(0) == 1 ? std::optional(std::vector<Rational>{Rational(1)}) : std::nullopt;
    // Top chains with zero boundary: kernel of delta_{top-1}^T.
    const auto dt = simp::coboundaryMatrix<Rational>(k, top - 1).transpose();
    linalg::RowReducer<Rational> r(k.count(top));
    for (const auto& row : dt.data) r.add(row);
    const auto ns = r.nullspace();
    if (ns.size() != 1) return std::nullopt;
    std::vector<Rational> c(static_cast<std::size_t>(k.count(top)));
    for (const auto& [i, v] : ns[0]) c[static_cast<std::size_t>(i)] = v;
    for (const auto& v : c)
        if (abs(v) != 1) return std::nullopt;
    return c;
}

std::vector<Rational> topGenerator(const SimplicialComplex& k) {
    const auto f = fundamentalCycle(k);
    if (!f) throw PreconditionError("orientation", "complex has no fundamental cycle");
    std::vector<Rational> g(f->size());
    g[0] = (*f)[0];
    return g;
}

Rational dualityPairing(const SimplicialComplex& k, const std::vector<Rational>& orientation, const Element& omega,
                        const Element& alpha) {
    const int top = k.dimension();
    if (static_cast<int>(orientation.size()) != k.count(top))
        throw PreconditionError("orientation", "orientation needs one value per top simplex");
    Rational total = 0;
    for (const auto& w : omega)
        for (const auto& a : alpha) {
            if (w.power != a.power || w.degree + a.degree != top) continue;
            const auto c = simp::cup<Rational>(k, w.cochain, w.degree, a.cochain, a.degree);
            Rational v = 0;
            for (std::size_t i = 0; i < c.size(); ++i) v += c[i] * orientation[i];
            BigInt fact;
            mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(w.power));
            total += v * Rational(fact);
        }
    return total;
}

Element dLambda(const SimplicialComplex& k, const std::vector<Rational>& lambda, const Element& alpha) {
    Element out;
    for (const auto& a : alpha) {
        if (a.degree + 1 <= k.dimension()) out.push_back({a.power, a.degree + 1, coboundaryOf(k, a.cochain, a.degree)});
        if (a.power >= 1 && a.degree + 3 <= k.dimension()) {
            auto c = rationalCup(k, lambda, 3, a.cochain, a.degree);
            for (auto& x : c) x *= a.power;
            out.push_back({a.power - 1, a.degree + 3, std::move(c)});
        }
    }
    return out;
}

Element dPrimeLambda(const SimplicialComplex& k, const std::vector<Rational>& lambda, const Element& omega) {
    Element out;
    for (const auto& w : omega) {
        if (w.degree + 1 <= k.dimension()) out.push_back({w.power, w.degree + 1, coboundaryOf(k, w.cochain, w.degree)});
        if (w.degree + 3 <= k.dimension()) {
            auto c = rationalCup(k, w.cochain, w.degree, lambda, 3);
            const int sign = w.degree % 2 == 0 ? -1 : 1;
            for (auto& x : c) x *= sign;
            out.push_back({w.power + 1, w.degree + 3, std::move(c)});
        }
    }
    return out;
}

}  // namespace orbiloop::zc
