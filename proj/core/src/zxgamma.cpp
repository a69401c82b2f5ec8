#include "orbiloop/zxgamma.hpp"

#include "orbiloop/error.hpp"

namespace orbiloop::cohom {

namespace {

std::size_t ipow(std::size_t b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

Rational reduceFor(Coeff coeff, const Rational& v) {
    if (coeff != Coeff::QmodZ) return v;
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    Rational r = v - Rational(q);
    r.canonicalize();
    return r;
}

}  // namespace

ZxGammaCochain::ZxGammaCochain(GroupPtr gamma, int degree, Coeff coeff)
    : gamma_(std::move(gamma)), degree_(degree), coeff_(coeff), tuples_(ipow(gamma_->order(), degree)) {
    if (degree < 0 || degree > 16) throw PreconditionError("degree", "unsupported Z x Gamma cochain degree");
    corners_.assign((std::size_t{1} << degree) * tuples_, 0);
}

const Rational& ZxGammaCochain::corner(unsigned mask, std::size_t gammaIndex) const {
    return corners_[mask * tuples_ + gammaIndex];
}

void ZxGammaCochain::setCorner(unsigned mask, std::size_t gammaIndex, const Rational& v) {
    if (coeff_ == Coeff::Z && v.get_den() != 1) throw PreconditionError("integral", "non-integral Z value");
    corners_[mask * tuples_ + gammaIndex] = reduceFor(coeff_, v);
}

Rational ZxGammaCochain::operator()(std::span<const ZxElement> args) const {
    std::size_t gi = 0;
    for (const auto& a : args) gi = gi * gamma_->order() + a.g;
    Rational v = 0;
    const unsigned masks = 1u << degree_;
    for (unsigned mask = 0; mask < masks; ++mask) {
        const Rational& cv = corners_[mask * tuples_ + gi];
        if (cv == 0) continue;
        // Weight prod_i (bit ? n_i : 1 - n_i); argument 0 is the most significant bit.
        BigInt w = 1;
        for (int i = 0; i < degree_ && w != 0; ++i) {
            const bool bit = (mask >> (degree_ - 1 - i)) & 1u;
            w *= static_cast<long>(bit ? args[i].n : 1 - args[i].n);
        }
        v += Rational(w) * cv;
    }
    return reduceFor(coeff_, v);
}

ZxGammaCochain ZxGammaCochain::fromFunction(GroupPtr gamma, int degree, Coeff coeff,
                                            const std::function<Rational(std::span<const ZxElement>)>& f) {
    ZxGammaCochain c(std::move(gamma), degree, coeff);
    const int n = c.gamma_->order();
    std::vector<ZxElement> args(degree);
    auto setGamma = [&](std::size_t gi) {
        for (int k = degree - 1; k >= 0; --k) {
            args[k].g = static_cast<int>(gi % n);
            gi /= n;
        }
    };
    for (std::size_t gi = 0; gi < c.tuples_; ++gi) {
        setGamma(gi);
        for (unsigned mask = 0; mask < (1u << degree); ++mask) {
            for (int i = 0; i < degree; ++i) args[i].n = (mask >> (degree - 1 - i)) & 1u;
            c.setCorner(mask, gi, f(args));
        }
    }
    const std::size_t probes = ipow(4, degree);
    for (std::size_t gi = 0; gi < c.tuples_; ++gi) {
        setGamma(gi);
        for (std::size_t p = 0; p < probes; ++p) {
            std::size_t x = p;
            for (int i = degree - 1; i >= 0; --i) {
                args[i].n = static_cast<std::int64_t>(x % 4) - 1;
                x /= 4;
            }
            if (reduceFor(coeff, f(args)) != c(args))
                throw PreconditionError("admissible", "cochain is not of degree <= 1 in its integer arguments");
        }
    }
    return c;
}

ZxGammaCochain ZxGammaCochain::pulledBack(const BarCochain& c) {
    ZxGammaCochain out(c.groupPtr(), c.degree(), c.coeff());
    for (std::size_t gi = 0; gi < out.tuples_; ++gi) out.setCorner(0, gi, c.at(gi));
    // Constant in n: every corner carries the same value.
    for (std::size_t gi = 0; gi < out.tuples_; ++gi)
        for (unsigned mask = 1; mask < (1u << out.degree_); ++mask) out.setCorner(mask, gi, c.at(gi));
    return out;
}

ZxGammaCochain ZxGammaCochain::crossWithGenerator(const BarCochain& c) {
    ZxGammaCochain out(c.groupPtr(), c.degree() + 1, c.coeff());
    const std::size_t rest = c.size();
    for (std::size_t gi = 0; gi < out.tuples_; ++gi) {
        const std::size_t tail = gi % rest;
        for (unsigned mask = 0; mask < (1u << out.degree_); ++mask) {
            const bool first = (mask >> (out.degree_ - 1)) & 1u;
            out.setCorner(mask, gi, first ? c.at(tail) : Rational(0));
        }
    }
    return out;
}

bool ZxGammaCochain::isZero() const {
    for (const auto& v : corners_)
        if (v != 0) return false;
    return true;
}

ZxGammaCochain ZxGammaCochain::lift() const {
    ZxGammaCochain out = *this;
    out.coeff_ = Coeff::Q;
    return out;
}

ZxGammaCochain ZxGammaCochain::as(Coeff c) const {
    ZxGammaCochain out(gamma_, degree_, c);
    for (std::size_t i = 0; i < corners_.size(); ++i) out.setCorner(static_cast<unsigned>(i / tuples_), i % tuples_, corners_[i]);
    return out;
}

ZxGammaCochain coboundary(const ZxGammaCochain& c) {
    const auto& g = c.gamma();
    const int k = c.degree();
    ZxGammaCochain out(c.gammaPtr(), k + 1, c.coeff());
    const int n = g.order();
    std::vector<ZxElement> args(k + 1), tmp(k);
    for (std::size_t gi = 0; gi < out.gammaTuples(); ++gi) {
        std::size_t x = gi;
        for (int i = k; i >= 0; --i) {
            args[i].g = static_cast<int>(x % n);
            x /= n;
        }
        for (unsigned mask = 0; mask < (1u << (k + 1)); ++mask) {
            for (int i = 0; i <= k; ++i) args[i].n = (mask >> (k - i)) & 1u;
            Rational v = 0;
            if (k > 0) {
                std::copy(args.begin() + 1, args.end(), tmp.begin());
                v += c(tmp);
                for (int m = 1; m <= k; ++m) {
                    int t = 0;
                    for (int j = 0; j <= k; ++j) {
                        if (j == m - 1) {
                            tmp[t++] = {args[j].n + args[j + 1].n, g.mul(args[j].g, args[j + 1].g)};
                            ++j;
                        } else {
                            tmp[t++] = args[j];
                        }
                    }
                    v += (m % 2 ? -1 : 1) * c(tmp);
                }
                std::copy(args.begin(), args.end() - 1, tmp.begin());
                v += ((k + 1) % 2 ? -1 : 1) * c(tmp);
            }
            out.setCorner(mask, gi, v);
        }
    }
    return out;
}

bool isCocycle(const ZxGammaCochain& c) { return coboundary(c).isZero(); }

ZxGammaCochain bockstein(const ZxGammaCochain& c) {
    if (c.coeff() != Coeff::QmodZ) throw PreconditionError("coeff", "bockstein expects a Q/Z cochain");
    if (!isCocycle(c)) throw PreconditionError("cocycle", "bockstein expects a cocycle");
    return coboundary(c.lift()).as(Coeff::Z);
}

BarCochain integrate(const ZxGammaCochain& c) {
    const int k = c.degree();
    if (k < 1) throw PreconditionError("degree", "integration lowers degree; needs degree >= 1");
    const int e = c.gamma().identity();
    return BarCochain::fromFunction(c.gammaPtr(), k - 1, c.coeff(), [&](std::span<const int> gs) {
        std::vector<ZxElement> args(k);
        Rational v = 0;
        for (int i = 0; i < k; ++i) {
            for (int j = 0, t = 0; j < k; ++j) args[j] = j == i ? ZxElement{1, e} : ZxElement{0, gs[t++]};
            v += (i % 2 ? -1 : 1) * c(args);
        }
        return v;
    });
}

}  // namespace orbiloop::cohom
