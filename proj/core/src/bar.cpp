#include "orbiloop/bar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orbiloop/error.hpp"

namespace orbiloop::cohom {

std::string coeffName(Coeff c) {
    switch (c) {
        case Coeff::Z: return "Z";
        case Coeff::Q: return "Q";
        case Coeff::QmodZ: return "QmodZ";
    }
    return "?";
}

Coeff parseCoeff(const std::string& s) {
    if (s == "Z") return Coeff::Z;
    if (s == "Q") return Coeff::Q;
    if (s == "QmodZ" || s == "Q/Z") return Coeff::QmodZ;
    throw PreconditionError("coeff", "unknown coefficient ring '" + s + "'");
}

namespace {

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Rational fracPart(const Rational& v) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    Rational r = v - Rational(q);
    r.canonicalize();
    return r;
}

}  // namespace

BarCochain::BarCochain(GroupPtr g, int degree, Coeff coeff)
    : group_(std::move(g)), degree_(degree), coeff_(coeff), values_(ipow(group_->order(), degree), 0) {
    if (degree < 0) throw PreconditionError("degree", "negative cochain degree");
}

BarCochain BarCochain::fromFunction(GroupPtr g, int degree, Coeff coeff,
                                    const std::function<Rational(std::span<const int>)>& f) {
    BarCochain c(std::move(g), degree, coeff);
    std::vector<int> args(degree);
    for (std::size_t i = 0; i < c.size(); ++i) {
        c.decode(i, args);
        c.set(i, f(args));
    }
    return c;
}

std::size_t BarCochain::index(std::span<const int> args) const {
    std::size_t i = 0;
    for (int a : args) i = i * group_->order() + a;
    return i;
}

void BarCochain::decode(std::size_t index, std::span<int> args) const {
    const std::size_t n = group_->order();
    for (int k = degree_ - 1; k >= 0; --k) {
        args[k] = static_cast<int>(index % n);
        index /= n;
    }
}

void BarCochain::set(std::size_t i, const Rational& v) {
    switch (coeff_) {
        case Coeff::Z:
            if (v.get_den() != 1) throw PreconditionError("integral", "non-integral value in a Z cochain");
            values_[i] = v;
            break;
        case Coeff::Q: values_[i] = v; break;
        case Coeff::QmodZ: values_[i] = fracPart(v); break;
    }
}

bool BarCochain::isZero() const {
    return std::all_of(values_.begin(), values_.end(), [](const Rational& v) { return v == 0; });
}

bool BarCochain::isNormalized() const {
    std::vector<int> args(degree_);
    for (std::size_t i = 0; i < size(); ++i) {
        decode(i, args);
        if (values_[i] != 0 && std::find(args.begin(), args.end(), group_->identity()) != args.end()) return false;
    }
    return true;
}

BarCochain& BarCochain::operator+=(const BarCochain& o) {
    if (o.degree_ != degree_ || o.coeff_ != coeff_ || o.group_->order() != group_->order())
        throw PreconditionError("same-space", "adding cochains of different spaces");
    for (std::size_t i = 0; i < size(); ++i) set(i, values_[i] + o.values_[i]);
    return *this;
}

BarCochain& BarCochain::operator-=(const BarCochain& o) {
    if (o.degree_ != degree_ || o.coeff_ != coeff_ || o.group_->order() != group_->order())
        throw PreconditionError("same-space", "subtracting cochains of different spaces");
    for (std::size_t i = 0; i < size(); ++i) set(i, values_[i] - o.values_[i]);
    return *this;
}

BarCochain BarCochain::scaled(const Rational& k) const {
    BarCochain out = *this;
    for (std::size_t i = 0; i < size(); ++i) out.set(i, values_[i] * k);
    return out;
}

BarCochain BarCochain::lift() const {
    BarCochain out(group_, degree_, Coeff::Q);
    out.values_ = values_;
    return out;
}

BarCochain BarCochain::reduce() const { return as(Coeff::QmodZ); }

BarCochain BarCochain::as(Coeff c) const {
    BarCochain out(group_, degree_, c);
    for (std::size_t i = 0; i < size(); ++i) out.set(i, values_[i]);
    return out;
}

BarCochain BarCochain::pullback(const GroupPtr& h, const std::vector<int>& hom) const {
    return fromFunction(h, degree_, coeff_, [&](std::span<const int> a) {
        std::vector<int> img(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) img[i] = hom[a[i]];
        return at(img);
    });
}

BarCochain coboundary(const BarCochain& c) {
    const auto& g = c.group();
    const int n = c.degree();
    BarCochain out(c.groupPtr(), n + 1, c.coeff());
    std::vector<int> args(n + 1), tmp(n);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out.decode(i, args);
        Rational v = 0;
        if (n > 0) {
            std::copy(args.begin() + 1, args.end(), tmp.begin());
            v += c.at(tmp);
            for (int k = 1; k <= n; ++k) {
                // merge positions k-1 and k
                int t = 0;
                for (int j = 0; j <= n; ++j) {
                    if (j == k - 1) {
                        tmp[t++] = g.mul(args[j], args[j + 1]);
                        ++j;
                    } else {
                        tmp[t++] = args[j];
                    }
                }
                v += (k % 2 ? -1 : 1) * c.at(tmp);
            }
            std::copy(args.begin(), args.end() - 1, tmp.begin());
            v += ((n + 1) % 2 ? -1 : 1) * c.at(tmp);
        }
        out.set(i, v);
    }
    return out;
}

bool isCocycle(const BarCochain& c) { return coboundary(c).isZero(); }

Normalized normalizeCocycle(const BarCochain& c) {
    if (c.degree() > 2) throw PreconditionError("degree", "normalization implemented for degree <= 2");
    if (!isCocycle(c)) throw PreconditionError("cocycle", "normalization needs a cocycle");
    const int n = c.degree();
    BarCochain gauge(c.groupPtr(), n == 0 ? 0 : n - 1, c.coeff());
    if (n == 2) {
        const int e = c.group().identity();
        const Rational v = c({e, e});
        for (std::size_t i = 0; i < gauge.size(); ++i) gauge.set(i, v);
    }
    BarCochain out = c;
    if (n >= 1) out -= coboundary(gauge);
    if (!out.isNormalized()) throw InternalError("normalization failed");
    return {out, gauge};
}

// --- FinAbPresentation -------------------------------------------------------------------

int FinAbPresentation::freeRank() const {
    return static_cast<int>(std::count(factors.begin(), factors.end(), 0));
}

std::vector<BigInt> FinAbPresentation::torsion() const {
    std::vector<BigInt> t;
    for (const auto& d : factors)
        if (d != 0) t.push_back(d);
    return t;
}

std::optional<BigInt> FinAbPresentation::order() const {
    if (freeRank() > 0) return std::nullopt;
    BigInt o = 1;
    for (const auto& d : factors) o *= d;
    return o;
}

std::string FinAbPresentation::str() const {
    if (factors.empty()) return "0";
    const std::string freeName = coeff == Coeff::Z ? "Z" : coeff == Coeff::Q ? "Q" : "Q/Z";
    std::ostringstream os;
    bool first = true;
    for (const auto& d : torsion()) {
        os << (first ? "" : " + ") << "Z/" << d.get_str();
        first = false;
    }
    if (const int r = freeRank(); r > 0) {
        os << (first ? "" : " + ") << freeName;
        if (r > 1) os << "^" << r;
    }
    return os.str();
}

// --- differentials -----------------------------------------------------------------------

SparseIntMatrix normalizedDifferential(const FiniteGroup& g, int n) {
    const int q = g.order() - 1;
    std::vector<int> rankOf(g.order(), -1), elemOf;
    for (int a = 0; a < g.order(); ++a)
        if (a != g.identity()) {
            rankOf[a] = static_cast<int>(elemOf.size());
            elemOf.push_back(a);
        }
    const std::size_t rows = ipow(q, n + 1), cols = ipow(q, n);
    SparseIntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    if (n == 0) return m;
    std::vector<int> args(n + 1), tmp(n);
    std::vector<std::pair<int, std::int64_t>> terms;
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t x = r;
        for (int k = n; k >= 0; --k) {
            args[k] = elemOf[x % q];
            x /= q;
        }
        terms.clear();
        auto add = [&](int sign) {
            std::size_t col = 0;
            for (int a : tmp) {
                if (rankOf[a] < 0) return;
                col = col * q + rankOf[a];
            }
            terms.emplace_back(static_cast<int>(col), sign);
        };
        std::copy(args.begin() + 1, args.end(), tmp.begin());
        add(1);
        for (int k = 1; k <= n; ++k) {
            int t = 0;
            for (int j = 0; j <= n; ++j) {
                if (j == k - 1) {
                    tmp[t++] = g.mul(args[j], args[j + 1]);
                    ++j;
                } else {
                    tmp[t++] = args[j];
                }
            }
            add(k % 2 ? -1 : 1);
        }
        std::copy(args.begin(), args.end() - 1, tmp.begin());
        add((n + 1) % 2 ? -1 : 1);
        std::sort(terms.begin(), terms.end());
        for (const auto& [c, v] : terms) m.push(static_cast<int>(r), c, v);
    }
    return m;
}

SparseIntMatrix fullDifferential(const FiniteGroup& g, int n) {
    const int q = g.order();
    const std::size_t rows = ipow(q, n + 1), cols = ipow(q, n);
    SparseIntMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    if (n == 0) return m;
    std::vector<int> args(n + 1), tmp(n);
    std::vector<std::pair<int, std::int64_t>> terms;
    auto col = [&]() {
        std::size_t c = 0;
        for (int a : tmp) c = c * q + a;
        return static_cast<int>(c);
    };
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t x = r;
        for (int k = n; k >= 0; --k) {
            args[k] = static_cast<int>(x % q);
            x /= q;
        }
        terms.clear();
        std::copy(args.begin() + 1, args.end(), tmp.begin());
        terms.emplace_back(col(), 1);
        for (int k = 1; k <= n; ++k) {
            int t = 0;
            for (int j = 0; j <= n; ++j) {
                if (j == k - 1) {
                    tmp[t++] = g.mul(args[j], args[j + 1]);
                    ++j;
                } else {
                    tmp[t++] = args[j];
                }
            }
            terms.emplace_back(col(), k % 2 ? -1 : 1);
        }
        std::copy(args.begin(), args.end() - 1, tmp.begin());
        terms.emplace_back(col(), (n + 1) % 2 ? -1 : 1);
        std::sort(terms.begin(), terms.end());
        for (const auto& [c, v] : terms) m.push(static_cast<int>(r), c, v);
    }
    return m;
}

std::vector<FinAbPresentation> cohomology(const FiniteGroup& g, Coeff coeff, int nmax, CohomologyOptions opt) {
    if (nmax < 0) throw PreconditionError("nmax", "nmax must be nonnegative");
    if (nmax > opt.nmaxGuard) throw PreconditionError("cost-guard", "nmax exceeds the cost guard");
    const double cells = std::pow(std::max(1, g.order() - 1), nmax + 1);
    if (cells > opt.tableGuard)
        throw PreconditionError("cost-guard", "bar complex table of size " + std::to_string(cells) +
                                                  " exceeds the guard");
    // delta_n for n = 0..nmax (Q/Z needs the top one for torsion, all need it for ranks).
    std::vector<Divisors> divs;
    std::vector<std::size_t> dims;
    for (int n = 0; n <= nmax; ++n) {
        auto m = normalizedDifferential(g, n);
        dims.push_back(static_cast<std::size_t>(m.cols));
        divs.push_back(elementaryDivisors(std::move(m)));
    }
    std::vector<FinAbPresentation> out;
    for (int n = 0; n <= nmax; ++n) {
        FinAbPresentation h;
        h.coeff = coeff;
        const int rankPrev = n == 0 ? 0 : divs[n - 1].rank;
        const long free = static_cast<long>(dims[n]) - divs[n].rank - rankPrev;
        if (coeff == Coeff::Z && n > 0) h.factors = divs[n - 1].nonUnit;
        if (coeff == Coeff::QmodZ) h.factors = divs[n].nonUnit;
        for (long i = 0; i < free; ++i) h.factors.push_back(0);
        out.push_back(std::move(h));
    }
    return out;
}

BarCochain bockstein(const BarCochain& c) {
    if (c.coeff() != Coeff::QmodZ) throw PreconditionError("coeff", "bockstein expects a Q/Z cochain");
    if (!isCocycle(c)) throw PreconditionError("cocycle", "bockstein expects a cocycle");
    return coboundary(c.lift()).as(Coeff::Z);
}

std::vector<BarCochain> characters(const GroupPtr& g) {
    const int e = g->exponent();
    const auto target = FiniteGroup::cyclic(e);
    std::vector<BarCochain> out;
    for (const auto& phi : gpd::homomorphisms(*g, target))
        out.push_back(BarCochain::fromFunction(g, 1, Coeff::QmodZ,
                                               [&](std::span<const int> a) { return Rational(phi[a[0]], e); }));
    std::sort(out.begin(), out.end(), [](const BarCochain& a, const BarCochain& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a.at(i) != b.at(i)) return a.at(i) < b.at(i);
        return false;
    });
    return out;
}

// --- coboundary oracle -------------------------------------------------------------------

CoboundaryOracle::CoboundaryOracle(GroupPtr g, int degree) : group_(std::move(g)), degree_(degree) {
    if (degree < 1) throw PreconditionError("degree", "coboundary oracle needs degree >= 1");
    snf_ = smith(fullDifferential(*group_, degree - 1).dense(), true);
    const int rows = static_cast<int>(snf_.u.size());
    for (int i = 0; i < rows; ++i) {
        if (i < snf_.rank()) {
            if (snf_.diag[i] == 1) continue;
            moduli_.push_back(snf_.diag[i]);
        } else {
            moduli_.push_back(0);
        }
        coordRows_.push_back(i);
    }
}

std::vector<BigInt> CoboundaryOracle::transformed(const BarCochain& c) const {
    if (c.degree() != degree_ || c.group().order() != group_->order() || c.coeff() != Coeff::Z)
        throw PreconditionError("same-space", "cochain does not match the oracle");
    std::vector<BigInt> b(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) b[i] = c.at(i).get_num();
    std::vector<BigInt> out(snf_.u.size(), 0);
    for (std::size_t r = 0; r < snf_.u.size(); ++r)
        for (std::size_t k = 0; k < b.size(); ++k)
            if (b[k] != 0 && snf_.u[r][k] != 0) out[r] += snf_.u[r][k] * b[k];
    return out;
}

bool CoboundaryOracle::isCoboundary(const BarCochain& c) const {
    const auto ub = transformed(c);
    for (std::size_t i = 0; i < ub.size(); ++i) {
        if (static_cast<int>(i) < snf_.rank()) {
            if (!mpz_divisible_p(ub[i].get_mpz_t(), snf_.diag[i].get_mpz_t())) return false;
        } else if (ub[i] != 0) {
            return false;
        }
    }
    return true;
}

std::vector<BigInt> CoboundaryOracle::coordinates(const BarCochain& c) const {
    const auto ub = transformed(c);
    std::vector<BigInt> out;
    for (std::size_t k = 0; k < coordRows_.size(); ++k) {
        BigInt v = ub[coordRows_[k]];
        if (moduli_[k] != 0) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), moduli_[k].get_mpz_t());
        out.push_back(v);
    }
    return out;
}

bool isCoboundary(const BarCochain& c) {
    if (c.degree() == 0) return c.isZero();
    if (!isCocycle(c)) return false;
    switch (c.coeff()) {
        case Coeff::Z: return CoboundaryOracle(c.groupPtr(), c.degree()).isCoboundary(c);
        case Coeff::Q: return true;
        case Coeff::QmodZ: {
            const auto b = bockstein(c);
            return CoboundaryOracle(c.groupPtr(), c.degree() + 1).isCoboundary(b);
        }
    }
    return false;
}

BarCochain inverseBockstein(const BarCochain& chi) {
    if (chi.degree() != 2 || chi.coeff() != Coeff::Z) throw PreconditionError("degree", "expects a Z 2-cochain");
    if (!isCocycle(chi)) throw PreconditionError("cocycle", "inverse Bockstein expects a cocycle");
    const CoboundaryOracle oracle(chi.groupPtr(), 2);
    const auto target = oracle.coordinates(chi);
    for (const auto& psi : characters(chi.groupPtr()))
        if (oracle.coordinates(bockstein(psi)) == target) return psi;
    throw PreconditionError("bockstein-image", "class is not in the image of the Bockstein");
}

}  // namespace orbiloop::cohom
