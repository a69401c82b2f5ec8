#include "orbiloop/field.hpp"

#include <numeric>
#include <sstream>

namespace orbiloop::linalg {

namespace {

using Poly = std::vector<Rational>;

void trimPoly(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly mulPoly(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trimPoly(out);
    return out;
}

Poly subPoly(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trimPoly(a);
    return a;
}

// Quotient and remainder of a by a nonzero b.
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    trimPoly(a);
    if (a.size() < b.size()) return {{}, a};
    Poly q(a.size() - b.size() + 1);
    const Rational lead = b.back();
    while (a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        const Rational f = a.back() / lead;
        q[shift] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        a.pop_back();
        trimPoly(a);
    }
    trimPoly(q);
    return {q, a};
}

}  // namespace

std::vector<Rational> cyclotomicPolynomial(int n) {
    if (n < 1) throw PreconditionError("order", "cyclotomic order must be positive");
    Poly p(static_cast<std::size_t>(n) + 1);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) p = divmod(p, cyclotomicPolynomial(d)).first;
    return p;
}

CyclotomicField::CyclotomicField(int n) : n_(n), phi_(cyclotomicPolynomial(n)) {}

std::vector<Rational> CyclotomicField::reduce(std::vector<Rational> p) const {
    for (auto& v : p) v.canonicalize();
    trimPoly(p);
    if (p.size() < phi_.size()) return p;
    return divmod(std::move(p), phi_).second;
}

Cyclo::Cyclo(std::shared_ptr<const CyclotomicField> f, std::vector<Rational> coeffs)
    : f_(std::move(f)), c_(f_ ? f_->reduce(std::move(coeffs)) : std::move(coeffs)) {
    trim();
    if (!f_ && c_.size() > 1) throw PreconditionError("field", "polynomial value without a cyclotomic field");
}

Cyclo Cyclo::zetaPower(std::shared_ptr<const CyclotomicField> f, long long k) {
    const long long n = f->order();
    const long long e = ((k % n) + n) % n;
    std::vector<Rational> c(static_cast<std::size_t>(e) + 1);
    c.back() = 1;
    return Cyclo(std::move(f), std::move(c));
}

Cyclo Cyclo::root(std::shared_ptr<const CyclotomicField> f, const Rational& v) {
    const Rational scaled = v * f->order();
    if (scaled.get_den() != 1)
        throw PreconditionError("root-order", "denominator of " + toString(v) + " does not divide " +
                                                  std::to_string(f->order()));
    const long long k = BigInt(scaled.get_num() % f->order()).get_si();
    return zetaPower(std::move(f), k);
}

void Cyclo::trim() {
    for (auto& v : c_) v.canonicalize();
    trimPoly(c_);
}

const std::shared_ptr<const CyclotomicField>& Cyclo::common(const Cyclo& o) const {
    if (f_ && o.f_ && f_ != o.f_ && f_->order() != o.f_->order())
        throw PreconditionError("field", "elements of different cyclotomic fields");
    return f_ ? f_ : o.f_;
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
    Cyclo r;
    r.f_ = common(o);
    r.c_ = c_;
    if (r.c_.size() < o.c_.size()) r.c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const { return *this + (-o); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
    const auto& f = common(o);
    if (isRational() || o.isRational()) {
        Cyclo r;
        r.f_ = f;
        if (isZero() || o.isZero()) return r;
        const Rational s = isRational() ? rationalPart() : o.rationalPart();
        r.c_ = isRational() ? o.c_ : c_;
        for (auto& v : r.c_) v *= s;
        return r;
    }
    return Cyclo(f, mulPoly(c_, o.c_));
}

Cyclo Cyclo::inverse() const {
    if (isZero()) throw PreconditionError("nonzero", "division by zero in a cyclotomic field");
    if (isRational()) {
        Cyclo r;
        r.f_ = f_;
        r.c_ = {1 / c_[0]};
        return r;
    }
    // Extended Euclid: s a + t phi = g, g a nonzero constant since phi is irreducible.
    Poly r0 = f_->polynomial(), r1 = c_, s0, s1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = divmod(r0, r1);
        Poly s = subPoly(s0, mulPoly(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.empty()) throw InternalError("cyclotomic inverse: non-invertible element");
    for (auto& v : s1) v /= r1[0];
    return Cyclo(f_, std::move(s1));
}

Cyclo Cyclo::operator/(const Cyclo& o) const {
    if (o.isRational() && !o.isZero()) {
        Cyclo r = *this;
        for (auto& v : r.c_) v /= o.c_[0];
        if (!r.f_) r.f_ = o.f_;
        return r;
    }
    Cyclo inv = o;
    if (!inv.f_) inv.f_ = f_;
    return *this * inv.inverse();
}

std::string Cyclo::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        if (!first) os << (sgn(c_[i]) > 0 ? " + " : " - ");
        else if (sgn(c_[i]) < 0) os << "-";
        const Rational a = abs(c_[i]);
        if (i == 0 || a != 1) os << toString(a);
        if (i > 0) os << (a != 1 ? "*" : "") << "t" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    return os.str();
}

}  // namespace orbiloop::linalg
