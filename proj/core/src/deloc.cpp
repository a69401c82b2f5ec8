#include "orbiloop/deloc.hpp"

#include <algorithm>
#include <map>

#include "orbiloop/coc.hpp"
#include "orbiloop/error.hpp"
#include "orbiloop/parallel.hpp"

namespace orbiloop::deloc {

using linalg::Cyclo;
using linalg::CyclotomicField;
using linalg::SparseVec;

void validate(const GammaComplex& k) {
    const auto& G = *k.group;
    const auto& K = k.complex;
    if (static_cast<int>(k.action.size()) != G.order())
        throw PreconditionError("action", "one vertex permutation per group element required");
    for (int g = 0; g < G.order(); ++g) {
        const auto& p = k.action[static_cast<std::size_t>(g)];
        if (static_cast<int>(p.size()) != K.vertexCount())
            throw PreconditionError("action", "permutation of " + G.name(g) + " has the wrong length");
        std::vector<char> hit(p.size(), 0);
        for (int v : p) {
            if (v < 0 || v >= K.vertexCount() || hit[static_cast<std::size_t>(v)])
                throw PreconditionError("action", "image of " + G.name(g) + " is not a permutation");
            hit[static_cast<std::size_t>(v)] = 1;
        }
        for (int d = 1; d <= K.dimension(); ++d)
            for (int i = 0; i < K.count(d); ++i)
                if (!simp::imageOf(K, d, i, p))
                    throw PreconditionError("action", G.name(g) + " does not map simplices to simplices");
    }
    for (int v = 0; v < K.vertexCount(); ++v)
        if (k.action[static_cast<std::size_t>(G.identity())][static_cast<std::size_t>(v)] != v)
            throw PreconditionError("action", "the identity does not act trivially");
    for (int g = 0; g < G.order(); ++g)
        for (int h = 0; h < G.order(); ++h)
            for (int v = 0; v < K.vertexCount(); ++v)
                if (k.action[static_cast<std::size_t>(G.mul(g, h))][static_cast<std::size_t>(v)] !=
                    k.action[static_cast<std::size_t>(g)][static_cast<std::size_t>(k.action[static_cast<std::size_t>(h)][static_cast<std::size_t>(v)])])
                    throw PreconditionError("action", "not a left action at (" + G.name(g) + ", " + G.name(h) + ")");
}

GammaComplex makeGammaComplex(simp::SimplicialComplex k, GroupPtr g, std::vector<std::vector<int>> action) {
    GammaComplex out{std::move(k), std::move(g), std::move(action)};
    validate(out);
    return out;
}

GammaComplex subdivide(const GammaComplex& k) {
    auto sd = simp::barycentric(k.complex);
    std::vector<std::vector<int>> base(static_cast<std::size_t>(k.complex.dimension() + 1));
    for (std::size_t v = 0; v < sd.origin.size(); ++v) base[static_cast<std::size_t>(sd.origin[v].first)].push_back(static_cast<int>(v));
    GammaComplex out{std::move(sd.complex), k.group, {}};
    for (const auto& p : k.action) {
        std::vector<int> q(sd.origin.size());
        for (std::size_t v = 0; v < sd.origin.size(); ++v) {
            const auto [d, i] = sd.origin[v];
            const auto img = simp::imageOf(k.complex, d, i, p);
            if (!img) throw PreconditionError("action", "group element does not map simplices to simplices");
            q[v] = base[static_cast<std::size_t>(d)][static_cast<std::size_t>(img->index)];
        }
        out.action.push_back(std::move(q));
    }
    return out;
}

bool isRegular(const GammaComplex& k) {
    const auto& K = k.complex;
    for (const auto& p : k.action)
        for (int d = 1; d <= K.dimension(); ++d)
            for (int i = 0; i < K.count(d); ++i) {
                const auto img = simp::imageOf(K, d, i, p);
                if (!img || img->index != i) continue;
                for (int v : K.simplex(d, i))
                    if (p[static_cast<std::size_t>(v)] != v) return false;
            }
    return true;
}

GammaComplex regularize(const GammaComplex& k) {
    validate(k);
    auto out = subdivide(subdivide(k));
    if (!isRegular(out)) throw InternalError("double subdivision is not regular");
    return out;
}

BrylinskiComplex brylinski(const GammaComplex& k) {
    BrylinskiComplex b{regularize(k), {}};
    const auto& G = *b.regular.group;
    for (const auto& cls : G.conjugacyClasses()) {
        BrylinskiSector s;
        s.representative = cls.front();
        s.centralizer = G.centralizer(s.representative);
        std::sort(s.centralizer.begin(), s.centralizer.end());
        const auto& p = b.regular.action[static_cast<std::size_t>(s.representative)];
        std::vector<int> fixedVertices;
        for (int v = 0; v < static_cast<int>(p.size()); ++v)
            if (p[static_cast<std::size_t>(v)] == v) fixedVertices.push_back(v);
        s.fixed = b.regular.complex.induced(fixedVertices, &s.vertexMap);
        std::vector<int> local(p.size(), -1);
        for (std::size_t i = 0; i < s.vertexMap.size(); ++i) local[static_cast<std::size_t>(s.vertexMap[i])] = static_cast<int>(i);
        for (int h : s.centralizer) {
            std::vector<int> q;
            for (int v : s.vertexMap) {
                const int w = local[static_cast<std::size_t>(b.regular.action[static_cast<std::size_t>(h)][static_cast<std::size_t>(v)])];
                if (w < 0) throw InternalError("centralizer does not preserve the fixed complex");
                q.push_back(w);
            }
            s.action.push_back(std::move(q));
        }
        b.sectors.push_back(std::move(s));
    }
    return b;
}

namespace {

cohom::BarCochain normalizedBeta(const cohom::BarCochain& beta, const gpd::FiniteGroup& g) {
    if (beta.degree() != 2 || beta.coeff() != cohom::Coeff::QmodZ)
        throw PreconditionError("gerbe-shape", "beta must be a Q/Z-valued 2-cochain");
    if (!(beta.group() == g)) throw PreconditionError("same-group", "beta is not defined on the acting group");
    if (!cohom::isCocycle(beta)) throw PreconditionError("cocycle", "beta is not a 2-cocycle");
    return cohom::normalizeCocycle(beta).cocycle;
}

// Trace of h on H^k(K^g) with the left action (h c)(sigma) = c(h^-1 sigma).
Rational traceOn(const simp::SimplicialComplex& fixed, const linalg::CochainCohomology<Rational>& h, int k,
                 const std::vector<int>& perm) {
    Rational tr = 0;
    for (int i = 0; i < h.dim(); ++i) {
        SparseVec<Rational> w;
        for (const auto& [s, x] : h.representative(i)) {
            const auto img = simp::imageOf(fixed, k, s, perm);
            if (!img) throw InternalError("action does not preserve the fixed complex");
            w.emplace_back(img->index, img->sign > 0 ? x : Rational(-x));
        }
        tr += h.coordinates(w)[static_cast<std::size_t>(i)];
    }
    return tr;
}

}  // namespace

DelocReport delocalized(const BrylinskiComplex& b, const cohom::BarCochain* beta) {
    const auto& G = *b.regular.group;
    std::optional<cohom::BarCochain> nb;
    if (beta) nb = normalizedBeta(*beta, G);
    const int top = b.regular.complex.dimension();
    DelocReport report{G.exponent(), std::vector<SectorDims>(b.sectors.size()), std::vector<int>(static_cast<std::size_t>(top + 1), 0)};
    auto field = std::make_shared<const CyclotomicField>(report.cyclotomicOrder);
    parallelFor(static_cast<int>(b.sectors.size()), [&](int si) {
        const auto& s = b.sectors[static_cast<std::size_t>(si)];
        SectorDims out{s.representative, static_cast<int>(s.centralizer.size()), {}, {}, {}};
        for (int h : s.centralizer) {
            Rational e = 0;
            if (nb) {
                const auto fn = [&](int x, int y) -> Rational { return (*nb)({x, y}); };
                e = coc::transgressOnGroup(G, fn, s.representative, h);
            }
            out.epsilon.push_back(e);
        }
        // The inner local system restricted to C(g) is a character.
        for (std::size_t a = 0; a < s.centralizer.size(); ++a)
            for (std::size_t c = 0; c < s.centralizer.size(); ++c) {
                const int ac = G.mul(s.centralizer[a], s.centralizer[c]);
                const auto pos = static_cast<std::size_t>(
                    std::lower_bound(s.centralizer.begin(), s.centralizer.end(), ac) - s.centralizer.begin());
                Rational d = out.epsilon[a] + out.epsilon[c] - out.epsilon[pos];
                if (d.get_den() != 1) throw InternalError("epsilon is not a character of the centralizer");
            }
        const auto coh = simp::simplicialCohomology<Rational>(s.fixed);
        for (int k = 0; k <= top; ++k) {
            if (k > s.fixed.dimension()) {
                out.fixedBetti.push_back(0);
                out.dims.push_back(0);
                continue;
            }
            const auto& hk = coh.degrees[static_cast<std::size_t>(k)];
            out.fixedBetti.push_back(hk.dim());
            Cyclo sum(0);
            for (std::size_t a = 0; a < s.centralizer.size(); ++a) {
                const Rational tr = hk.dim() == 0 ? Rational(0) : traceOn(s.fixed, hk, k, s.action[a]);
                if (sgn(tr) == 0) continue;
                sum += Cyclo::root(field, -out.epsilon[a]) * Cyclo(tr);
            }
            const Cyclo dim = sum / Cyclo(static_cast<int>(s.centralizer.size()));
            if (!dim.isRational() || dim.rationalPart().get_den() != 1 || sgn(dim.rationalPart()) < 0)
                throw InternalError("projector trace is not a nonnegative integer: " + dim.str());
            out.dims.push_back(static_cast<int>(dim.rationalPart().get_num().get_si()));
        }
        report.sectors[static_cast<std::size_t>(si)] = std::move(out);
    });
    for (const auto& s : report.sectors)
        for (int k = 0; k <= top; ++k) report.total[static_cast<std::size_t>(k)] += s.dims[static_cast<std::size_t>(k)];
    return report;
}

DelocReport delocalized(const GammaComplex& k, const cohom::BarCochain* beta) { return delocalized(brylinski(k), beta); }

std::vector<int> orbitComplexCohomology(const GammaComplex& regular) {
    const auto& G = *regular.group;
    const auto& K = regular.complex;
    const int top = K.dimension();
    // Cells of Lambda K: (g, sigma) with sigma fixed by g; orbits under (g, sigma) -> (h g h^-1, h sigma).
    std::vector<std::map<std::pair<int, int>, int>> orbit(static_cast<std::size_t>(top + 1));
    std::vector<std::vector<std::pair<int, int>>> reps(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d)
        for (int g = 0; g < G.order(); ++g)
            for (int i = 0; i < K.count(d); ++i) {
                const auto img = simp::imageOf(K, d, i, regular.action[static_cast<std::size_t>(g)]);
                if (!img || img->index != i || orbit[static_cast<std::size_t>(d)].count({g, i})) continue;
                const int id = static_cast<int>(reps[static_cast<std::size_t>(d)].size());
                reps[static_cast<std::size_t>(d)].emplace_back(g, i);
                for (int h = 0; h < G.order(); ++h) {
                    const auto hi = simp::imageOf(K, d, i, regular.action[static_cast<std::size_t>(h)]);
                    if (!hi || hi->sign != 1) throw InternalError("action reverses a simplex after regularization");
                    orbit[static_cast<std::size_t>(d)][{G.conj(h, g), hi->index}] = id;
                }
            }
    std::vector<int> ranks(static_cast<std::size_t>(top + 1), 0);
    for (int d = 0; d < top; ++d) {
        linalg::SparseMatrix<Rational> m(static_cast<int>(reps[static_cast<std::size_t>(d + 1)].size()),
                                         static_cast<int>(reps[static_cast<std::size_t>(d)].size()));
        for (std::size_t r = 0; r < reps[static_cast<std::size_t>(d + 1)].size(); ++r) {
            const auto [g, i] = reps[static_cast<std::size_t>(d + 1)][r];
            std::map<int, Rational> row;
            for (int j = 0; j <= d + 1; ++j)
                row[orbit[static_cast<std::size_t>(d)].at({g, K.face(d + 1, i, j)})] += (j % 2 ? -1 : 1);
            for (auto& [c, v] : row)
                if (sgn(v) != 0) m.data[r].emplace_back(c, v);
        }
        ranks[static_cast<std::size_t>(d)] = linalg::rank(m);
    }
    std::vector<int> dims;
    for (int d = 0; d <= top; ++d)
        dims.push_back(static_cast<int>(reps[static_cast<std::size_t>(d)].size()) - ranks[static_cast<std::size_t>(d)] -
                       (d > 0 ? ranks[static_cast<std::size_t>(d - 1)] : 0));
    return dims;
}

std::vector<int> delocalizedUntwistedRational(const GammaComplex& k) {
    const auto b = brylinski(k);
    const auto direct = orbitComplexCohomology(b.regular);
    const auto viaProjectors = delocalized(b, nullptr).total;
    if (direct != viaProjectors) throw InternalError("orbit complex and projector traces disagree");
    return direct;
}

}  // namespace orbiloop::deloc
